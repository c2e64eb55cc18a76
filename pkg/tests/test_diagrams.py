import random

import pytest

from equibridge.diagrams import (
    build_knot_diagram,
    build_lhat_diagram,
    build_plat_diagram,
    linking_number,
    pd_code_text,
)
from equibridge.laurent import DomainError
from equibridge.presentations import I1Presentation, parse_i1
from equibridge.rationals import eval_cf


def rand_pres(rng, n_max=3, a_max=6, c_max=3):
    n = rng.randint(1, n_max)
    alphas = tuple(rng.choice([a for a in range(-a_max, a_max + 1)
                               if a and a % 2 == 0]) for _ in range(n))
    cs = tuple(rng.choice([c for c in range(-c_max, c_max + 1) if c])
               for _ in range(n))
    return I1Presentation(alphas, cs)


def test_plat_examples():
    pd = build_plat_diagram([2, -2])
    assert pd.crossing_count() == 4 and pd.component_count() == 1
    pd = build_plat_diagram([2, -2, -2])
    assert pd.crossing_count() == 6 and pd.component_count() == 2
    pd = build_plat_diagram([0])
    assert pd.crossing_count() == 0 and pd.component_count() == 2


def test_component_parity_matches_numerator():
    rng = random.Random(21)
    for _ in range(250):
        m = rng.randint(1, 6)
        ent = [rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for _ in range(m)]
        pd = build_plat_diagram(ent)
        assert pd.crossing_count() == sum(abs(e) for e in ent)
        v = eval_cf(ent)
        want = 1 if v.p % 2 != 0 else 2
        assert pd.component_count() == want, (ent, v)


def test_lhat_is_two_component_zero_linking():
    for text in ("2;1", "2;-1", "2,-2;1,1", "2,4;1,1", "-4,2;3,-1"):
        pd = build_lhat_diagram(parse_i1(text))
        assert pd.component_count() == 2
        assert linking_number(pd) == 0


def test_lhat_anti_parallel_final_marker():
    pd = build_lhat_diagram(parse_i1("2;1"))
    mu, ml = pd.final_marker
    comp_of = pd.component_of_edge()
    assert comp_of[mu[0]] != comp_of[ml[0]]


def test_linking_number_examples():
    hopf = build_plat_diagram([2])
    assert linking_number(hopf) in (1, -1)
    unlink = build_plat_diagram([0])
    assert linking_number(unlink) == 0
    with pytest.raises(DomainError):
        linking_number(build_plat_diagram([2, -2]))  # a knot


def test_linking_number_random_lhat():
    rng = random.Random(22)
    for _ in range(60):
        assert linking_number(build_lhat_diagram(rand_pres(rng))) == 0


def test_knot_diagram_validates():
    pd = build_knot_diagram(parse_i1("2,4;1,1"))
    assert pd.component_count() == 1
    assert pd.crossing_count() == 2 + 2 + 4 + 2


def test_pd_code_shape():
    pd = build_plat_diagram([2, -2])
    lines = pd_code_text(pd).strip().splitlines()
    assert len(lines) == 4
    edge_numbers = set()
    for line in lines:
        parts = line.split()
        assert parts[0] == "X" and len(parts) == 5
        edge_numbers.update(int(x) for x in parts[1:])
    # every edge appears exactly twice among all crossing slots
    assert edge_numbers == set(range(1, 9))


def test_writhe_changes_with_mirror():
    a = build_plat_diagram([3])
    b = build_plat_diagram([-3])
    assert a.writhe() == -b.writhe() != 0
