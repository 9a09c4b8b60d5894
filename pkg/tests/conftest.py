import pytest

import clustercat as cc
from clustercat.derived import DObject
from clustercat.orbit import OrbitObject

A1 = "vertices 1\n"
A2 = "vertices 2\narrow 1 2\n"
A3 = "vertices 3\narrow 1 2\narrow 2 3\n"
A4 = "vertices 4\narrow 1 2\narrow 2 3\narrow 3 4\n"
D4 = "vertices 4\narrow 2 1\narrow 2 3\narrow 2 4\n"

_cache: dict = {}


@pytest.fixture(scope="session")
def build():
    """Session-cached DerivedCategory factory keyed by quiver text."""

    def _build(text: str) -> cc.DerivedCategory:
        if text not in _cache:
            q = cc.parse_quiver(text)
            _cache[text] = cc.DerivedCategory(cc.knit_ar_quiver(q))
        return _cache[text]

    return _build


def obj(module_id: int, shift: int = 0, modulus: int = 1) -> OrbitObject:
    return OrbitObject(DObject(module_id, shift), modulus)


def module_obj(cat, dim_vector, shift: int = 0) -> OrbitObject:
    """Catalog object of the orbit category by module dimension vector."""
    mid = cat.ar.module_by_dim(dim_vector).id
    return cat.canonicalize(DObject(mid, shift))
