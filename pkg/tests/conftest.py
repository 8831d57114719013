from __future__ import annotations

import pytest
from hypothesis import settings

from nodalsym import _kernels

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

BACKENDS = [_kernels.python] + ([_kernels.compiled] if _kernels.compiled is not None else [])


@pytest.fixture(scope="module", params=BACKENDS, ids=lambda m: "compiled" if m is _kernels.compiled else "python")
def kernels(request):
    return request.param
