import pytest
from hypothesis import settings

from genus8.field import GF, QQ
from genus8.scan import accepted_pair, interpolate_w, y_lines

settings.register_profile("repo", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("repo")

FIELDS = [QQ, GF(11)]


@pytest.fixture(params=FIELDS, ids=lambda F: F.spec())
def field(request):
    return request.param


@pytest.fixture(scope="session")
def seed1():
    """Accepted pair for seed 1 over F_11 with its scans, quartic and lines of Y."""
    pair, ss = accepted_pair(1, GF(11))
    quartic = interpolate_w(pair, ss.wx)
    lines = y_lines(pair, ss.y)
    return {"pair": pair, "scan": ss, "quartic": quartic, "y_lines": lines}
