import pytest

from modgroup import DesignCandidate, DesignCatalog


def make_candidate(index, size, tau1, tau2, radius):
    """Candidate with an exactly-representable design size.

    Geometry uses dyadic fractions (0.125, 0.0625) so the six terms sum to
    ``size`` with no rounding, keeping hand-computed expectations exact.
    """
    l1 = size - 0.5
    assert l1 > 0, "size must exceed 0.5 for this helper"
    return DesignCandidate(
        index=index, l1=l1, l2=0.125, l3=0.125, l4=0.125,
        ee_x=0.0625, ee_y=0.0625, sf=1.0,
        tau1=float(tau1), tau2=float(tau2), task_radius=float(radius),
    )


def build_catalog(sizes, tau1s, tau2s, radii=None):
    radii = radii if radii is not None else list(range(1, len(sizes) + 1))
    return DesignCatalog(tuple(
        make_candidate(i + 1, s, t1, t2, r)
        for i, (s, t1, t2, r) in enumerate(zip(sizes, tau1s, tau2s, radii))
    ))


@pytest.fixture
def toy_catalog():
    """Four designs with sizes 1..4, tau1 = [1,2,3,4], tau2 = [1,1,2,2]."""
    return build_catalog([1, 2, 3, 4], [1, 2, 3, 4], [1, 1, 2, 2])
