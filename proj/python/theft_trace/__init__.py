"""Python surface for the theft-trace pipeline.

Thin re-export of the compiled module; see the function docstrings there.
"""

try:
    from . import _theft_trace as _core  # installed wheel layout
except ImportError:  # in-tree build dir on sys.path
    import _theft_trace as _core

classify_session_duration = _core.classify_session_duration
cross_validate = _core.cross_validate
encode_sessions = _core.encode_sessions
expenditure_ratio = _core.expenditure_ratio
extract_dataset = _core.extract_dataset
feature_names = _core.feature_names
generate_scenario = _core.generate_scenario
match_motifs = _core.match_motifs
mine_common_sequences = _core.mine_common_sequences
parse_event_count = _core.parse_event_count
sha256_hex = _core.sha256_hex
trace = _core.trace

__all__ = [
    "classify_session_duration",
    "cross_validate",
    "encode_sessions",
    "expenditure_ratio",
    "extract_dataset",
    "feature_names",
    "generate_scenario",
    "match_motifs",
    "mine_common_sequences",
    "parse_event_count",
    "sha256_hex",
    "trace",
]

__version__ = "0.1.0"
