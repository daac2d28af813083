import pytest

from homcert.rings import Fp, Zmod, ZZ

ALL_RINGS = [ZZ, Fp(5), Zmod(4)]


@pytest.fixture(params=ALL_RINGS, ids=lambda r: str(r))
def ring(request):
    return request.param
