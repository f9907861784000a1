"""
Symmetry Group Tests
Monomial maps, generators, the 23040-element closure and its named subgroups
"""

import numpy as np
import pytest

from hyptet.core.coords import b_from_angles, b_from_c, circulants_from_angles, s_from_b
from hyptet.core.errors import ConstraintViolationError, DomainError
from hyptet.core.ideal_geom import my_octahedron_list
from hyptet.core.my_engine import hat_data, my_data, my_list
from hyptet.core.sampling import random_balanced, random_finite_angles
from hyptet.core.symmetry import (
    MIRROR,
    SHADED_GENERATORS,
    SUBGROUP_ORDERS,
    UNSHADED_GENERATORS,
    VERTEX_MOVES,
    MonomialMap,
    closure,
    g_o,
    g_o_super,
    g_r,
    generators,
    is_d6_shaped,
    multiplier_exponents,
    p_u34,
    parse_word,
    s_one,
    s_two,
    stated_multiplier_consistent,
    subgroup,
    vertex_move,
)

GROUP_ORDER = 23040
TOL = 1e-12


def close(x, y, tol: float = TOL) -> bool:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) < tol


# ==================== Monomial maps ====================

def test_parse_word():
    assert parse_word("tuvTUV") == (1, 2, 3, 4, 5, 6)
    assert parse_word("T~uvt~UV") == (-4, 2, 3, -1, 5, 6)
    with pytest.raises(DomainError):
        parse_word("tuvTUX")


def test_invalid_maps_rejected():
    with pytest.raises(ConstraintViolationError):
        MonomialMap.from_letters("t~uvTUV")
    with pytest.raises(ConstraintViolationError):
        MonomialMap((1, 1, 3, 4, 5, 6))


def test_letters_round_trip():
    for gen in SHADED_GENERATORS + UNSHADED_GENERATORS:
        assert MonomialMap.from_letters(gen.letters).letters == gen.letters


def test_named_r_rows():
    """g_o sends r to 1/r; the Regge move multiplies it by UV"""
    assert list(g_o().r_row) == [-1, -1, -1, 1, 1, 1, 1]
    assert list(g_r().r_row) == [0, 0, 0, 0, 1, 1, 1]
    b = random_balanced(np.random.default_rng(3))
    assert abs(g_o()(b).r - 1 / b.r) < TOL


def test_matrix_round_trip(group_table, rng):
    for i in rng.integers(len(group_table), size=50):
        g = group_table.elements[int(i)]
        assert MonomialMap.from_matrix(g.matrix) == g


def test_from_matrix_checks_r_row():
    M = MonomialMap.identity().matrix
    M[6, 0] = 1
    with pytest.raises(ConstraintViolationError):
        MonomialMap.from_matrix(M)


def test_action_is_a_group_action(rng):
    """(g @ h)(b) = g(h(b)) and g⁻¹ undoes g, r included"""
    gens = generators()
    for _ in range(30):
        g = gens[int(rng.integers(len(gens)))] @ gens[int(rng.integers(len(gens)))]
        h = gens[int(rng.integers(len(gens)))]
        b = random_balanced(rng)
        assert close((g @ h)(b).as_array(), g(h(b)).as_array(), 1e-11)
        assert close(g.inverse()(g(b)).as_array(), b.as_array(), 1e-11)
        assert (g @ g.inverse()).is_identity
        assert g(b).constraint_residual() < 1e-10


# ==================== Generators ====================

def test_stated_multipliers():
    """Every tabulated multiplier matches its derived r-row except two"""
    mismatched = {gen.letters for gen in SHADED_GENERATORS + UNSHADED_GENERATORS
                  if not stated_multiplier_consistent(gen)}
    assert mismatched == {"tV~vTUu~", "tuT~v~UV"}
    for word in mismatched:
        assert list(MonomialMap.from_letters(word).r_row) == [0, 0, 0, 0, 0, 0, 1]


def test_multiplier_exponents():
    assert list(multiplier_exponents("Tt~r")) == [-1, 0, 0, 1, 0, 0, 1]
    with pytest.raises(DomainError):
        multiplier_exponents("x")


def test_generators_are_involutions():
    for g in generators():
        assert (g @ g).is_identity, f"{g} is not an involution"


# ==================== Group enumeration ====================

@pytest.mark.slow
def test_group_order(group_table):
    print(f"\nSymmetry group order: {len(group_table)}")
    assert len(group_table) == GROUP_ORDER


@pytest.mark.slow
def test_group_is_d6_shaped(group_table):
    assert is_d6_shaped(group_table)
    assert not is_d6_shaped(subgroup("W"))


@pytest.mark.slow
def test_group_closed_and_contains_named_elements(group_table, rng):
    assert group_table.contains(g_o()) and group_table.contains(g_r())
    assert group_table.word(MonomialMap.identity()) == ""
    for _ in range(50):
        g = group_table.elements[int(rng.integers(len(group_table)))]
        h = group_table.elements[int(rng.integers(len(group_table)))]
        assert group_table.contains(g @ h)
        assert group_table.contains(g.inverse())


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUBGROUP_ORDERS))
def test_subgroup_orders(name, group_table):
    sub = subgroup(name)
    assert len(sub) == SUBGROUP_ORDERS[name], f"{name} has order {len(sub)}"
    assert GROUP_ORDER % len(sub) == 0
    assert all(group_table.contains(g) for g in sub)


def test_subgroup_lookup():
    shaded = subgroup("shaded")
    mirror = MonomialMap.from_letters(MIRROR)
    assert not shaded.contains(mirror)
    with pytest.raises(DomainError):
        shaded.index(mirror)
    with pytest.raises(DomainError):
        subgroup("octahedral")


def test_closure_of_a_single_involution():
    table = closure([MonomialMap.from_letters("TuvtUV")], ["s"])
    assert len(table) == 2
    assert table.words == ("", "s") or table.words == ("s", "")


@pytest.mark.slow
def test_table_csv_export(group_table, tmp_path):
    path = tmp_path / "group.csv"
    assert group_table.to_csv(path) == GROUP_ORDER
    rows = np.loadtxt(path, delimiter=",", dtype=int)
    assert rows.shape == (GROUP_ORDER, 49)
    assert MonomialMap.from_matrix(rows[0].reshape(7, 7)) == group_table.elements[0]


# ==================== Super-coordinate moves ====================

def test_super_moves_keep_constraints(finite_samples):
    for a in finite_samples:
        s = s_from_b(b_from_angles(a))
        for move in (s_one, s_two, p_u34, g_o_super):
            moved = move(s)
            assert max(moved.constraint_residuals()) < 1e-10, f"{move.__name__} breaks constraints"


def test_g_o_super_displays_g_o(finite_samples):
    """The super-coordinate form of g_o agrees with its balanced action"""
    for a in finite_samples:
        b = b_from_angles(a)
        assert close(g_o_super(s_from_b(b)).as_array(), s_from_b(g_o()(b)).as_array(), 1e-10)


def test_g_o_display_factors_through_moves(finite_samples):
    """g_o on super coordinates is s_one after p_u34 after s_two"""
    for a in finite_samples:
        s = s_from_b(b_from_angles(a))
        assert close(g_o_super(s).as_array(), s_one(p_u34(s_two(s))).as_array(), 1e-10)


# ==================== Angle-level actions ====================

def test_g_o_angle_action(finite_samples):
    for a in finite_samples:
        A, B, C, D, E, F = a.values
        S = (B + C + E + F) / 2
        moved = [-A, -S, E + F - S, -D, B + E - S, B + F - S]
        assert close(g_o()(b_from_angles(a)).as_array(), b_from_angles(moved).as_array(), 1e-11)


def test_regge_angle_action(finite_samples):
    for a in finite_samples:
        A, B, C, D, E, F = a.values
        S = (B + C + E + F) / 2
        moved = [A, S - B, S - C, D, S - E, S - F]
        assert close(g_r()(b_from_angles(a)).as_array(), b_from_angles(moved).as_array(), 1e-11)


def test_s_one_and_s_two_are_involutions(finite_samples):
    s = s_from_b(b_from_angles(finite_samples[0]))
    assert close(s_one(s_one(s)).as_array(), s.as_array(), 1e-10)
    assert close(s_two(s_two(s)).as_array(), s.as_array(), 1e-10)


def test_vertex_moves_pair_with_generators():
    """One shaded and one unshaded move per vertex, covering all twelve generators"""
    assert len(VERTEX_MOVES) == 12
    assert {(m.vertex, m.shaded) for m in VERTEX_MOVES} == {
        (v, shaded) for v in ("12", "34", "23", "14", "13", "24") for shaded in (True, False)
    }
    by_letters = {gen.letters: gen for gen in SHADED_GENERATORS + UNSHADED_GENERATORS}
    assert set(by_letters) == {m.letters for m in VERTEX_MOVES}
    for move in VERTEX_MOVES:
        assert by_letters[move.letters].shaded == move.shaded, f"{move.name} has the wrong shade"


def test_vertex_moves_display_balanced_action(rng):
    """s(g·b) equals the super-coordinate move applied to s(b)"""
    worst = {}
    for _ in range(20):
        b = random_balanced(rng)
        s = s_from_b(b)
        for move in VERTEX_MOVES:
            err = float(np.max(np.abs(move(s).as_array() - s_from_b(move.map(b)).as_array())))
            worst[move.name] = max(worst.get(move.name, 0.0), err)
    print(f"\nWorst vertex-move residual: {max(worst.values()):.3g}")
    bad = {name: err for name, err in worst.items() if err > 1e-11}
    assert not bad, f"moves disagree with their generators: {bad}"


def test_vertex_move_corrections_recorded():
    corrected = {m.name for m in VERTEX_MOVES if m.correction}
    assert corrected == {"P14s", "P23u", "P14u", "P24u"}


def test_shaded_moves_compose_to_s_one(finite_samples):
    s = s_from_b(b_from_angles(finite_samples[0]))
    composed = vertex_move("12", True)(vertex_move("23", True)(
        vertex_move("34", True)(vertex_move("14", True)(s))))
    assert close(composed.as_array(), s_one(s).as_array(), 1e-10)
    assert vertex_move("34", False).action is p_u34
    with pytest.raises(DomainError):
        vertex_move("11", True)


# ==================== Invariants of the action ====================

@pytest.mark.slow
def test_hat_delta_is_invariant(group_table, rng):
    """δ̂(g·b) = δ̂(b) for random balanced points and random group elements"""
    elements = group_table.elements
    worst = 0.0
    for _ in range(100):
        b = random_balanced(rng)
        g = elements[int(rng.integers(len(elements)))]
        before = hat_data(b, strict=False).delta
        after = hat_data(g(b), strict=False).delta
        worst = max(worst, abs(after - before))
    print(f"\nWorst δ̂ drift: {worst:.3g}")
    assert worst < 1e-11


def test_g_o_carries_octahedral_list_to_my_list(rng):
    """The octahedral list of g_o·c at ρ̂ is the tetrahedral list of c, entry by entry"""
    go = g_o()
    worst = 0.0
    for _ in range(50):
        c = circulants_from_angles(random_finite_angles(rng))
        moved = go(b_from_c(c))
        octahedral = my_octahedron_list(s_from_b(moved), hat_data(moved).rho)
        assert abs(hat_data(moved).rho - my_data(c).rho) < 1e-10
        worst = max(worst, float(np.max(np.abs(octahedral - np.array(my_list(c).entries)))))
    print(f"\nWorst list mismatch: {worst:.3g}")
    assert worst < 1e-10


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
