"""Global desk-scale bounds.

Each bound can be overridden through an environment variable so that the
CLI and the library share one configuration point.
"""
import os


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


# largest permutation group / group table that is fully enumerated
ORDER_BOUND = _env_int("NATGROUP_ORDER_BOUND", 10**6)
# largest point count accepted by the isometry and naturalness search
VERTEX_BOUND = _env_int("NATGROUP_VERTEX_BOUND", 64)
# largest group table the naturalness decision is attempted on
DECISION_BOUND = _env_int("NATGROUP_DECISION_BOUND", 160)
# clique count cap for connection graphs, Barycentric refinements, complexes
CLIQUE_BOUND = _env_int("NATGROUP_CLIQUE_BOUND", 20000)
# words visited by ball-growth enumeration on tree groups
WORD_BOUND = _env_int("NATGROUP_WORD_BOUND", 10**6)


class BoundExceeded(RuntimeError):
    """A desk-scale limit was hit; the input is fine but too large."""

    def __init__(self, what, limit, stage=None):
        self.what = what
        self.limit = limit
        self.stage = stage
        msg = f"{what} exceeds bound {limit}"
        if stage:
            msg += f" (stage: {stage})"
        super().__init__(msg)
