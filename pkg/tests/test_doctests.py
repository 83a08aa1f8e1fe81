import doctest

import pytest

from permscheme import counting, oracle, perms, reasoning, recurrence, scheme


@pytest.mark.parametrize("module", [perms, oracle, reasoning, scheme, counting, recurrence])
def test_module_doctests(module):
    failed, _ = doctest.testmod(module)
    assert failed == 0
