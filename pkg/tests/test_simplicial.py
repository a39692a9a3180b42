import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from braidlab.braid import PureBraid, a_generator, commutator, is_brunnian, theta
from braidlab.freelie import Alphabet
from braidlab.simplicial import (
    IdentityReport,
    check_boundary_certificate,
    degeneracy_fs1,
    face_fs1,
    face_kernel_generators,
    fs1_cycle_seeds,
    instance_ap,
    instance_fs1,
    is_moore_cycle,
    random_moore_cycles,
    search_boundary_preimage,
    theta_simplicial_check,
    verify_simplicial_identities,
)
from braidlab.words import FreeWord
from braidlab.words import commutator as commutator_word

from strategies import pure_braids, words


def y(t, q, e=1):
    return FreeWord.generator(Alphabet("y", t), q, e)


def images(h):
    return [str(w) for w in h.images]


def test_face_examples():
    assert images(face_fs1(2, 0)) == ["y1", "1"]
    assert images(face_fs1(2, 1)) == ["y1", "y1"]
    assert images(face_fs1(2, 2)) == ["1", "y1"]
    assert images(face_fs1(1, 0)) == ["1"] and images(face_fs1(1, 1)) == ["1"]
    for n in range(1, 6):
        assert face_fs1(n, n).images[n - 1] == (y(n - 1, n - 1) if n > 1 else FreeWord.identity(Alphabet("y", 0)))
    with pytest.raises(IndexError):
        face_fs1(2, 3)


def test_degeneracy_examples():
    assert degeneracy_fs1(1, 0)(y(1, 1)) == y(2, 1)
    assert degeneracy_fs1(1, 1)(y(1, 1)) == y(2, 2)
    assert degeneracy_fs1(2, 2)(y(2, 2)) == y(3, 3)
    assert degeneracy_fs1(2, 0)(y(2, 1)) == y(3, 1)
    with pytest.raises(IndexError):
        degeneracy_fs1(2, 3)


def _simplex(t, q):
    return (0,) * (t + 1 - q) + (1,) * q


@pytest.mark.parametrize("t", range(1, 6))
def test_face_table_is_coordinate_deletion(t):
    # y_q is the simplex 0^(t+1-q) 1^q of the circle; constant simplices are the basepoint
    for i in range(t + 1):
        for q in range(1, t + 1):
            simplex = _simplex(t, q)
            face = simplex[:i] + simplex[i + 1:]
            ones = sum(face)
            expected = "1" if ones in (0, len(face)) else str(y(t - 1, ones))
            assert str(face_fs1(t, i).images[q - 1]) == expected


@pytest.mark.parametrize("t", range(0, 5))
def test_degeneracy_table_is_coordinate_repetition(t):
    for j in range(t + 1):
        for q in range(1, t + 1):
            simplex = _simplex(t, q)
            up = simplex[: j + 1] + simplex[j:]
            assert degeneracy_fs1(t, j).images[q - 1] == y(t + 1, sum(up))


def test_instances():
    fs1, ap = instance_fs1(), instance_ap()
    assert fs1.rank(3) == 3 and fs1.level_group(3) == "F3"
    assert ap.level_group(0) == "P1" and ap.generators(0) == []
    assert ap.level_group(2) == "P3" and len(ap.generators(2)) == 3
    with pytest.raises(IndexError):
        ap.face(2, 3, ap.identity(2))


@pytest.mark.parametrize("spec, N", [(instance_fs1(), 5), (instance_ap(), 4)])
def test_identities_hold(spec, N):
    rep = verify_simplicial_identities(spec, N, samples=100, seed=1)
    assert rep.passed, rep.failures
    assert set(rep.counts) == {"d_i d_j = d_(j-1) d_i", "s_i s_j = s_(j+1) s_i", "d_i s_j"}
    doc = json.loads(rep.to_json())
    assert doc["failures"] == [] and doc["instance"] == spec.name


def test_identity_report_records_witness():
    rep = IdentityReport("x", 1)
    rep.record("d_i s_j", False, {"level": 1, "indices": [0, 0], "element": "y1"})
    assert not rep.passed and rep.failures[0]["identity"] == "d_i s_j"


class _BrokenCircle(type(instance_fs1())):
    name = "broken"

    def degeneracy(self, t, j, x):
        return super().degeneracy(t, (j + 1) % (t + 1), x)


def test_sweep_catches_broken_degeneracies():
    rep = verify_simplicial_identities(_BrokenCircle(), 3, samples=10)
    assert not rep.passed and rep.failures


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(lambda t: st.tuples(st.just(t), words(t, 8, "y"), st.integers(0, t))))
def test_degenerate_faces(args):
    t, w, i = args
    fs1 = instance_fs1()
    assert fs1.face(t + 1, i, fs1.degeneracy(t, i, w)) == w
    assert fs1.face(t + 1, i + 1, fs1.degeneracy(t, i, w)) == w


def test_moore_cycle_examples():
    fs1, ap = instance_fs1(), instance_ap()
    assert is_moore_cycle(fs1, 2, FreeWord.from_letters(Alphabet("y", 2), [(1, 1), (2, -1), (1, -1), (2, 1)]))
    assert not is_moore_cycle(fs1, 2, y(2, 1))
    c = commutator(a_generator(1, 2, 3), a_generator(1, 3, 3))
    assert is_moore_cycle(ap, 2, c) and is_brunnian(c)


@settings(deadline=None)
@given(pure_braids(4, 4))
def test_ap_cycles_are_brunnian(b):
    assert is_moore_cycle(instance_ap(), 3, b) == is_brunnian(b)


@pytest.mark.parametrize("t", range(1, 5))
def test_face_kernel_generators(t):
    fs1 = instance_fs1()
    for i, k in enumerate(face_kernel_generators(t)):
        assert fs1.face(t, i, k).is_identity()
    assert all(is_moore_cycle(fs1, t, z) for z in fs1_cycle_seeds(t))


@pytest.mark.parametrize("t", [2, 3])
def test_cycles_map_to_brunnian_braids(t):
    for z in random_moore_cycles(t, 10, random.Random(t)):
        assert is_moore_cycle(instance_fs1(), t, z)
        assert is_brunnian(theta(t, z))


def test_boundary_certificates():
    fs1, ap = instance_fs1(), instance_ap()
    assert check_boundary_certificate(fs1, 1, fs1.identity(2), fs1.identity(1))
    b = commutator(a_generator(1, 2, 3), a_generator(1, 3, 3))
    assert not check_boundary_certificate(ap, 2, ap.degeneracy(2, 0, b), b)
    with pytest.raises(ValueError):
        check_boundary_certificate(fs1, 1, fs1.identity(3), fs1.identity(1))


def test_boundary_certificate_from_level_three():
    # an iterated commutator of face-kernel elements is killed by d1..d3, so d0 of it is a boundary
    fs1 = instance_fs1()
    K = face_kernel_generators(3)
    z = commutator_word(commutator_word(K[1], K[2]), K[3])
    w = fs1.face(3, 0, z)
    assert not w.is_identity()
    assert check_boundary_certificate(fs1, 2, z, w)
    assert is_moore_cycle(fs1, 2, w)
    assert not check_boundary_certificate(fs1, 2, z, ~w)


def test_boundary_search():
    fs1 = instance_fs1()
    found = search_boundary_preimage(fs1, 2, fs1.identity(2), max_length=2)
    assert found is not None and found.is_identity()
    # y1 generates the first homotopy group, so no certificate exists
    assert search_boundary_preimage(fs1, 1, y(1, 1), max_length=3) is None


@pytest.mark.parametrize("N", [1, 3, 4])
def test_theta_naturality(N):
    rep = theta_simplicial_check(N)
    assert rep.passed
    assert rep.counts["theta_1(y1) = A(1,2)"]["pass"] == 1
