#include <stdexcept>

#include "theft_trace/classify.hpp"

namespace theft_trace {

Confusion& Confusion::operator+=(const Confusion& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

Metrics compute_metrics(const Confusion& c) {
  if (c.tp < 0 || c.fp < 0 || c.tn < 0 || c.fn < 0)
    throw std::invalid_argument("compute_metrics: negative count");
  Metrics m;
  if (c.tp + c.fp > 0)
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0)
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.total() > 0)
    m.accuracy =
        static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  return m;
}

}  // namespace theft_trace
