"""Random serial dictatorship toolkit.

Exact lotteries, polynomial support checks, fractional house assignments,
and count recovery from lottery probabilities. Documents are plain dicts;
the heavy lifting happens in the compiled ``_rsdkit`` extension, which
exchanges JSON strings with this wrapper.
"""

import json as _json

from ._rsdkit import (  # noqa: F401
    Error,
    GuardExceeded,
    IntegrityError,
    OracleError,
    ParseError,
    ValidationError,
    pascal_determinant as _pascal_determinant,
)
from . import _rsdkit as _core

__all__ = [
    "Error",
    "ParseError",
    "ValidationError",
    "GuardExceeded",
    "IntegrityError",
    "OracleError",
    "lottery",
    "sample",
    "support",
    "support_member",
    "sd",
    "assign",
    "assign_sample",
    "check_assignment",
    "reduce_set_cover",
    "recover_set_cover",
    "reduce_assignment",
    "recover_assignment",
    "bipartite_fragment",
    "pascal_determinant",
]

__version__ = "1.0.0"

_DEFAULT_GUARD = 10
_DEFAULT_BRUTE_GUARD = 20


def _roundtrip(raw):
    return _json.loads(raw)


def lottery(profile, method="memo", guard=_DEFAULT_GUARD):
    """Exact outcome lottery; probabilities are ``"num/den"`` strings."""
    return _roundtrip(_core.lottery_json(_json.dumps(profile), method, guard))


def sample(profile, total, seed=0):
    """Monte Carlo lottery estimate with reproducible counts."""
    return _roundtrip(_core.sample_json(_json.dumps(profile), total, seed))


def support(profile):
    """Alternatives the lottery gives positive probability."""
    return _roundtrip(_core.support_json(_json.dumps(profile)))["support"]


def support_member(profile, alternative):
    """Membership verdict plus a realizing permutation and trace when yes."""
    return _roundtrip(_core.support_member_json(_json.dumps(profile), alternative))


def sd(profile, order):
    """Serial dictatorship outcome for a full 1-based agent order."""
    return _core.sd_label(_json.dumps(profile), list(order))


def assign(problem, method="memo", guard=_DEFAULT_GUARD):
    """Exact fractional assignment matrix (agents x houses)."""
    return _roundtrip(_core.assign_json(_json.dumps(problem), method, guard))


def assign_sample(problem, total, seed=0):
    return _roundtrip(_core.assign_sample_json(_json.dumps(problem), total, seed))


def check_assignment(problem, assignment):
    """Can some picking order realize this deterministic assignment?"""
    doc = {"assignment": list(assignment)}
    return _roundtrip(_core.check_assignment_json(_json.dumps(problem), _json.dumps(doc)))


def reduce_set_cover(instance, k):
    """Voting profile whose lottery encodes the instance's cover counts."""
    return _roundtrip(_core.reduce_set_cover_json(_json.dumps(instance), k))


def recover_set_cover(instance, guard=_DEFAULT_GUARD, brute_guard=_DEFAULT_BRUTE_GUARD):
    """Recover all j-cover counts from exact lottery probabilities."""
    return _roundtrip(_core.recover_set_cover_json(_json.dumps(instance), guard, brute_guard))


def reduce_assignment(problem, agent, k):
    """Clone-and-dummy padded instance for a 1-based agent."""
    return _roundtrip(_core.reduce_assignment_json(_json.dumps(problem), agent, k))


def recover_assignment(problem, agent, guard=_DEFAULT_GUARD, brute_guard=_DEFAULT_BRUTE_GUARD):
    """Recover the q_j preserving-prefix counts behind one agent's top-house probability."""
    return _roundtrip(_core.recover_assignment_json(_json.dumps(problem), agent, guard, brute_guard))


def bipartite_fragment(graph):
    """Assignment fragment encoding a bipartite graph's matchable subsets."""
    return _roundtrip(_core.bipartite_fragment_json(_json.dumps(graph)))


def pascal_determinant(n):
    """Determinant of the n x n matrix with entries (i+j-2)!, as an int."""
    return int(_pascal_determinant(n))
