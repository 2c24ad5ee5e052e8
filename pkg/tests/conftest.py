import json

import pytest

from noneq import FreeFactor, FreeProductGroup, cyclic_group


@pytest.fixture(scope="session")
def z2z3():
    return FreeProductGroup([cyclic_group(2), cyclic_group(3)])


@pytest.fixture(scope="session")
def z3f1():
    return FreeProductGroup([cyclic_group(3), FreeFactor(1)])


@pytest.fixture(scope="session")
def z3f2():
    return FreeProductGroup([cyclic_group(3), FreeFactor(2)])


_Z2_SPEC = {
    "type": "table",
    "name": "Z2",
    "elements": ["0", "1"],
    "mul": [[0, 1], [1, 0]],
    "inv": [0, 1],
    "identity": 0,
}
_Z3_SPEC = {
    "type": "table",
    "name": "Z3",
    "elements": ["0", "1", "2"],
    "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
    "inv": [0, 2, 1],
    "identity": 0,
}


@pytest.fixture
def factor_files(tmp_path):
    """Write the standard factor spec files and return their paths."""
    specs = {
        "z2z3": {"type": "product", "factors": [_Z2_SPEC, _Z3_SPEC]},
        "z3f1": {
            "type": "product",
            "factors": [_Z3_SPEC, {"type": "free", "rank": 1, "prefix": "e"}],
        },
        "z3f2": {
            "type": "product",
            "factors": [_Z3_SPEC, {"type": "free", "rank": 2, "prefix": "e"}],
        },
    }
    paths = {}
    for name, spec in specs.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(spec))
        paths[name] = str(path)
    return paths
