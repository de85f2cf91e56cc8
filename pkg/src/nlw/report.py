"""One JSON document combining every check on a state set."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from . import bipart, oplm, sdp, witness
from .model import StateSet, inner_product, is_genuinely_entangled, is_orthogonal

SCHEMA_VERSION = "1"
DEFAULT_SDP_DIM_LIMIT = 16


def check_document(s: StateSet) -> dict:
    ent = [is_genuinely_entangled(st) for st in s.states]
    max_overlap = max((abs(inner_product(a, b)) for a, b in itertools.combinations(s.states, 2)), default=0.0)
    return {
        "set": s.label,
        "num_parties": s.num_parties,
        "local_dims": list(s.local_dims),
        "states": list(s.names),
        "backend": "exact" if s.is_exact else "float",
        "normalized": True,
        "orthogonal": all(is_orthogonal(a, b) for a, b in itertools.combinations(s.states, 2)),
        "max_overlap": float(f"{max_overlap:.12g}"),
        "genuinely_entangled": [e.genuine for e in ent],
        "schmidt_ranks": {name: {str(b): r for b, r in e.ranks.items()} for name, e in zip(s.names, ent)},
    }


def _sdp_entry(s: StateSet, b, opts, dim_limit) -> dict:
    dim = s.states[0].dim
    entry = {"split": str(b), "dim": dim}
    if dim_limit is not None and dim > dim_limit:
        entry["skipped"] = f"dimension {dim} above report limit {dim_limit}; use --full"
        return entry
    entry.update(sdp.ppt_value_for_split(s, b, opts).to_dict())
    return entry


def full_report(
    s: StateSet, opts: sdp.SdpOptions | None = None, full: bool = False, jobs: int = 1, exact_oplm: bool = False
) -> dict:
    """Orthogonality, entanglement, certificates, per-split SDP, OPLM flags,
    and the three-state strong-nonlocality verdict."""
    doc = {"schema": SCHEMA_VERSION}
    doc.update(check_document(s))
    splits = bipart.enumerate_bipartitions(s.num_parties)
    pool = ThreadPoolExecutor(max_workers=max(1, jobs))
    try:
        oplm_rows = list(pool.map(lambda b: oplm.toplm_verdict(s, b, exact=exact_oplm).to_dict(), splits))
        limit = None if full else DEFAULT_SDP_DIM_LIMIT
        doc["sdp"] = list(pool.map(lambda b: _sdp_entry(s, b, opts, limit), splits))
    finally:
        pool.shutdown()
    if len(s) == 3:
        rep = witness.certify_all(s, jobs=jobs)
        cert = rep.to_dict()
        cert["oplm"] = oplm_rows
        doc["certificates"] = cert
        doc["overall"] = rep.overall
        doc["strong_nonlocality"] = rep.strong_nonlocality
        doc["lemma1"] = oplm.lemma1_combiner(rep).to_dict()
    else:
        doc["certificates"] = None
        doc["overall"] = witness.OVERALL_UNDETERMINED
        doc["strong_nonlocality"] = False
        doc["lemma1"] = None
        doc["oplm"] = oplm_rows
    return doc
