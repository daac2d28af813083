import random

import pytest

from homcert.complexes import Complex, PeriodicTail
from homcert.flatness import (EngineConfig, FlatCertificate, FlatRelation,
                              check_certificate, cycle_flatness_probe,
                              flat_certificate, pd_bound_collapse)
from homcert.matrices import Mat, MatrixError
from homcert.rings import Fp, Zmod, ZZ
from homcert.samplers import random_contractible_complex, random_relation

RINGS = [ZZ, Fp(5), Zmod(4)]


def test_relation_validates_sum():
    with pytest.raises(MatrixError):
        FlatRelation(ZZ, Mat(ZZ, 1, 2, (1, 1)), Mat(ZZ, 1, 2, (1, 2)))


def test_certificate_for_2_3_relation():
    # 2*3 + 3*(-2) = 0 in Z; witness a* = (3, -2)^T, q = (1)
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 2, (2, 3)), Mat(ZZ, 1, 2, (3, -2)))
    cert = flat_certificate(rel)
    assert check_certificate(rel, cert)
    assert cert.ast.col_values(0) in ([3, -2], [-3, 2])
    assert cert.q.row_list() in ([[1]], [[-1]])


def test_certificate_for_zero_coefficient_row():
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 1, (0,)), Mat(ZZ, 2, 1, (1, 2)))
    cert = flat_certificate(rel)
    assert check_certificate(rel, cert)
    assert cert.ast.row_list() == [[1]]


def test_certificate_for_unit_coefficient():
    # a = (1) forces z = 0; the kernel is empty and so is the certificate
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 1, (1,)), Mat(ZZ, 2, 1, (0, 0)))
    cert = flat_certificate(rel)
    assert check_certificate(rel, cert)
    assert cert.ast.cols == 0


def test_checker_rejects_bad_witnesses():
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 2, (2, 3)), Mat(ZZ, 1, 2, (3, -2)))
    bad = FlatCertificate(Mat(ZZ, 2, 1, (3, -1)), Mat(ZZ, 1, 1, (1,)))
    assert not check_certificate(rel, bad)
    wrong_shape = FlatCertificate(Mat(ZZ, 3, 1, (0, 0, 0)), Mat(ZZ, 1, 1, (0,)))
    assert not check_certificate(rel, wrong_shape)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_random_relations_all_certify(ring):
    rng = random.Random(53)
    for _ in range(100):
        a, z = random_relation(rng, ring, rng.randint(1, 4), rng.randint(1, 4))
        rel = FlatRelation(ring, a, z)
        cert = flat_certificate(rel)
        assert check_certificate(rel, cert)


def exact_three_term():
    # 0 -> Z --(1 2)^T--> Z^2 --(2 -1)--> Z -> 0 is exact
    return Complex(ZZ, "left", {-2: 1, -1: 2, 0: 1},
                   {-2: Mat(ZZ, 2, 1, (1, 2)), -1: Mat(ZZ, 1, 2, (2, -1))})


def test_cycle_probe_certifies_on_exact_complex():
    q = exact_three_term()
    z = Mat(ZZ, 2, 2, (1, 2, 2, 4))  # cycle columns (multiples of (1,2)^T)
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 2, (2, -1)), z)
    v = cycle_flatness_probe(q, -1, rel)
    assert v.ok and v.code == "certified"
    cert = v.details["certificate"].certificate
    assert check_certificate(rel, cert)


def test_cycle_probe_rejects_non_cycles():
    q = exact_three_term()
    z = Mat(ZZ, 2, 1, (1, 0))  # not in ker d^-1
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 1, (0,)), z)
    v = cycle_flatness_probe(q, -1, rel)
    assert not v.ok and v.code == "not_cycles"


def test_cycle_probe_rejects_non_exact_complex():
    q = Complex(ZZ, "left", {-1: 1, 0: 1}, {-1: Mat(ZZ, 1, 1, (4,))})
    rel = FlatRelation(ZZ, Mat(ZZ, 1, 1, (0,)), Mat(ZZ, 1, 1, (0,)))
    v = cycle_flatness_probe(q, 0, rel)
    assert not v.ok and v.code == "not_exact"


def test_cycle_probe_hypothesis_failure_on_periodic_complex():
    ring = Zmod(4)
    two = Mat(ring, 1, 1, (2,))
    q = Complex(ring, "left", {0: 1, 1: 1}, {0: two},
                tail_below=PeriodicTail(-1, 0, 1), tail_above=PeriodicTail(1, 1, 1))
    rel = FlatRelation(ring, Mat(ring, 1, 1, (2,)), two)
    v = cycle_flatness_probe(q, 0, rel)
    assert not v.ok and v.code == "hom_hypothesis_fails"
    assert v.details["degree"] == 0


def test_engine_config_per_ring():
    assert EngineConfig.for_ring(ZZ).bound == 1
    assert EngineConfig.for_ring(Zmod(4)).bound == 0
    assert EngineConfig.for_ring(Fp(5)).bound == 0
    assert EngineConfig().bound == 16
    with pytest.raises(ValueError):
        EngineConfig(-1)


def test_pd_collapse_on_contractible_complexes():
    rng = random.Random(59)
    for ring in RINGS:
        c = random_contractible_complex(rng, ring)
        span = c.support()
        window = (span[0] - 2, span[1] + 2)
        v = pd_bound_collapse(c, EngineConfig.for_ring(ring), window)
        assert v.ok and v.code == "collapsed", (ring, v.code, v.details)
        hom = v.details["homotopy"]
        from homcert.complexes import ChainMap
        assert hom.bounds(ChainMap.identity(c), None, span[0] - 1, span[1] + 1)


def test_pd_collapse_window_too_narrow():
    c = random_contractible_complex(random.Random(2), ZZ)
    v = pd_bound_collapse(c, EngineConfig(16), (0, 3))
    assert not v.ok and v.code == "window_too_narrow"


def test_pd_collapse_detects_homology():
    c = Complex(ZZ, "left", {-1: 1, 0: 1}, {-1: Mat(ZZ, 1, 1, (2,))})
    v = pd_bound_collapse(c, EngineConfig.for_ring(ZZ), (-4, 3))
    assert not v.ok and v.code == "not_exact"
