import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfgauge.examples import (cyclic_group_algebra, divided_power_coalgebra, quantum_line, sweedler, symmetric_group_algebra,
                                taft)
from hopfgauge.linalg import Field, InputError
from hopfgauge.structures import (CoalgebraData, Report, TensorPowerCoalgebra, ad_invariant_integral, check_structure,
                                  convolution_inverse, convolve, convolve_many, is_connected, wedge_filtration)

HOPF = {
    "KC3": lambda: cyclic_group_algebra(Field(), 3),
    "KS3/F5": lambda: symmetric_group_algebra(Field(5), 3),
    "H4": lambda: sweedler(),
    "H4/F3": lambda: sweedler(Field(3)),
    "Taft3/F7": lambda: taft(3, 7),
    "lifted/F5": lambda: quantum_line(Field(5), 4, 2, -1, 1),
}


@pytest.mark.parametrize("name", list(HOPF))
def test_bundled_hopf_algebras_pass(name):
    rep = check_structure(HOPF[name](), "hopf")
    assert rep.ok, str(rep)


@pytest.mark.parametrize("field,axiom", [("delta", "coassociativity"), ("mult", "associativity"),
                                         ("antipode", "antipode left (S*id)")])
def test_tampering_is_named(field, axiom):
    H = sweedler()
    arr = getattr(H, field).copy()
    idx = (1,) * arr.ndim if field != "delta" else (3, 3, 3)
    arr[idx] += 1
    bad = dataclasses.replace(H, **{field: arr})
    rep = check_structure(bad, "hopf")
    assert not rep.ok
    names = [it.name for it in rep.failed()]
    assert any(axiom in n for n in names), names
    assert all(it.witness is not None for it in rep.failed() if "shape" not in it.detail)


def test_kinds():
    H = sweedler()
    for kind in ("coalgebra", "algebra", "bialgebra"):
        assert check_structure(H, kind).ok
    with pytest.raises(InputError):
        check_structure(H, "group")
    with pytest.raises(InputError, match="antipode"):
        check_structure(H.bialgebra, "hopf")


def test_report_lines_and_json():
    rep = Report(title="t")
    rep.add("a", True)
    rep.add("b", False, (1, 2), "why")
    assert not rep.ok
    assert str(rep).splitlines() == ["t", "PASS  a", "FAIL  b  witness=(1, 2)  (why)"]
    assert rep.to_json()["items"][1]["witness"] == [1, 2]


COALGEBRAS = {
    "H4": lambda: sweedler().coalgebra,
    "KS3/F7": lambda: symmetric_group_algebra(Field(7), 3).coalgebra,
    "divided/Q": lambda: divided_power_coalgebra(Field(), 4),
    "lifted/F5": lambda: quantum_line(Field(5), 4, 2, -1, 1).coalgebra,
}


@pytest.mark.parametrize("name", list(COALGEBRAS))
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_convolution_is_a_monoid(name, seed):
    C = COALGEBRAS[name]()
    F = C.field
    rng = np.random.default_rng(seed)
    f, g, h = (F.random(C.dim, rng) for _ in range(3))
    assert F.equal(convolve(convolve(f, g, C), h, C), convolve(f, convolve(g, h, C), C))
    assert F.equal(convolve(C.counit, f, C), f) and F.equal(convolve(f, C.counit, C), f)


@pytest.mark.parametrize("n", [2, 3, 5])
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_group_algebra_inverse_oracle(n, seed):
    # on KG convolution is pointwise on group elements
    F = Field(7)
    C = cyclic_group_algebra(F, n).coalgebra
    f = F.random(n, np.random.default_rng(seed))
    inv = convolution_inverse(f, C)
    if np.any(f == 0):
        assert inv is None
    else:
        assert F.equal(inv, np.array([F.inv(x) for x in f], dtype=F.dtype))


def test_tensor_power_matches_explicit_coalgebra():
    C = sweedler().coalgebra
    F = C.field
    d = C.dim
    delta2 = F.einsum("ack,bdl->abcdkl", C.delta, C.delta).reshape(d * d, d * d, d * d)
    explicit = CoalgebraData(field=F, delta=delta2, counit=F.kron(C.counit, C.counit))
    power = TensorPowerCoalgebra(C, 2)
    rng = np.random.default_rng(0)
    f, g = F.random(d * d, rng), F.random(d * d, rng)
    assert F.equal(convolve(f, g, power), convolve(f, g, explicit))
    assert F.equal(power.counit, explicit.counit)


def test_vector_valued_convolution_and_inverse():
    H = sweedler()
    F = H.field
    S = convolution_inverse(F.eye(H.dim), H.coalgebra, H.algebra)
    assert F.equal(S, H.antipode)
    assert F.equal(convolve_many(H.coalgebra, S, F.eye(4), A=H.algebra), F.outer(H.unit, H.counit))


def test_connectedness():
    assert is_connected(divided_power_coalgebra(Field(), 4)) == (True, [1, 2, 3, 4])
    ok, dims = is_connected(sweedler().coalgebra)
    assert not ok and dims == [1]
    C = sweedler().coalgebra
    grouplikes = C.field.asarray([[1, 0], [0, 0], [0, 1], [0, 0]])  # 1 and g
    assert wedge_filtration(C, grouplikes)[-1] == 4


@pytest.mark.parametrize("H", [cyclic_group_algebra(Field(), 5), symmetric_group_algebra(Field(5), 3)],
                         ids=["KC5", "KS3/F5"])
def test_group_algebra_integral_is_delta_e(H):
    assert H.field.equal(ad_invariant_integral(H), H.unit)


@pytest.mark.parametrize("H", [sweedler(), taft(3, 7)], ids=["H4", "Taft3"])
def test_non_cosemisimple_has_no_integral(H):
    assert ad_invariant_integral(H) is None


def test_char_two_group_algebra_integral_satisfies_constraints():
    # delta_e is a normalized two-sided ad-invariant integral on KC2 even over F_2
    H = cyclic_group_algebra(Field(2), 2)
    F = H.field
    lam = ad_invariant_integral(H)
    assert F.equal(lam, F.asarray([1, 0]))
    for h in range(2):
        e = F.basis_vector(2, h)
        lhs = F.tensordot(F.tensordot(H.delta, e, ([2], [0])), lam, ([1], [0]))
        assert F.equal(lhs, F.reduce(F.dot(lam, e) * H.unit))

