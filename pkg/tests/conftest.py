import pytest

from cdspec import FieldSpec, build_context

_CTX_CACHE = {}


def get_ctx(p, n, modulus=None):
    """Context cache shared across the suite; contexts are immutable."""
    key = (p, n, modulus)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = build_context(FieldSpec(p, n, modulus))
    return _CTX_CACHE[key]


@pytest.fixture
def ctx_factory():
    return get_ctx
