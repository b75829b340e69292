from borsuk.golay import build_code
from borsuk.leech import enumerate_min_vectors

_CACHE = {}


def shell():
    """The full minimal shell, cached for hypothesis tests (they cannot take fixtures)."""
    if "M" not in _CACHE:
        _CACHE["M"] = enumerate_min_vectors(build_code())
    return _CACHE["M"]
