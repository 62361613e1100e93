import dataclasses
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinwpd.pipeline import NotEligibleError, construct
from artinwpd.word import (
    TAGS,
    ShadowOracle,
    check_skewering,
    gamma_length_formula,
    verify_certificate,
)
from graphs import g4, random_eligible

G4 = construct(g4())


def test_g4_gamma_letters():
    assert "".join(G4.gamma.letters) == "acabdacbd" * 2
    assert len(G4.gamma.letters) == 18
    assert G4.gamma.r == 2 and G4.schedule.n == 4


def test_g4_prefixes_and_boundaries():
    gw = G4.gamma
    assert gw.prefix(1) == tuple("aca")
    assert gw.prefix(0) == ()
    assert gw.prefix(gw.r * gw.n) == gw.letters
    assert gw.factor_boundaries == (0, 9)
    assert gw.block_boundaries == (0, 3, 5, 7, 9, 12, 14, 16)
    assert [b.twisted for b in gw.blocks] == [True, False, False, False] * 2


def test_g4_length_formula():
    assert gamma_length_formula(G4.schedule, G4.selection, G4.path) == 2 * (8 + 1) == 18


def test_g4_hyperplane_types():
    sched = G4.hyperplanes
    assert [sched.descriptor(1, d).type for d in range(1, 9)] == list("aabbaabb")
    assert [sched.descriptor(2, d).type for d in range(1, 5)] == list("ccdd")
    j13 = sched.descriptor(1, 3)
    assert (j13.a, j13.l, j13.prefix) == (1, 2, 1)
    assert sched.descriptor(1, 2).prefix == 1


def test_g4_descriptor_count():
    assert len(G4.hyperplanes.descriptors()) == 32
    assert G4.certificate.family_count == 32


def test_g4_vertex_and_cube_markers():
    sched = G4.hyperplanes
    w0, w1, w2 = sched.vertex(0), sched.vertex(1), sched.vertex(2)
    assert (w0.prefix, w0.clique, w0.power) == (0, (), 0)
    assert (w1.prefix, w1.clique) == (0, ("a", "c"))
    assert (w2.prefix, w2.clique) == (1, ())
    assert sched.cube(1).clique == ("a", "c")
    assert len(sched.cubes()) == 16 and len(sched.vertices()) == 17


def test_paired_steps_share_a_type():
    sched = G4.hyperplanes
    for i in (1, 2):
        for x in range(1, 9):
            assert sched.descriptor(i, 2 * x - 1).type == sched.descriptor(i, 2 * x).type


def test_g4_key4_sequence():
    cert = G4.certificate
    assert len(cert.entries) == 16
    assert cert.entries[:2] == ((1, 1), (2, 2))
    assert [i for i, _ in cert.entries] == [1] + [2] * 8 + [1] * 7
    tags = [s.tag for s in cert.steps]
    assert tags[1] == "KEY" and tags[9] == "KEY"
    assert set(tags) <= set(TAGS)
    assert set(cert.coverage) == set("abcd")
    assert (cert.start_flank.type, cert.end_flank.type) == ("b", "a")


def test_per_factor_sequences_use_the_twisted_translation():
    cert = G4.certificate
    assert [s.tag for s in cert.per_factor[0][:2]] == ["KEY0-1", "KEY0-3"]
    assert {s.tag for seq in cert.per_factor for s in seq} == {"KEY0-1", "KEY0-2", "KEY0-3"}


def test_g4_certificate_verifies():
    rep = verify_certificate(G4.certificate, G4.graph, G4.schedule, G4.selection)
    assert rep.ok, rep.failures
    assert rep.coverage == (4, 4)
    assert rep.family_count == 32
    assert rep.steps_checked == rep.steps_passed == 48


def test_oracle_records_are_filled_and_pass():
    for s in G4.certificate.steps:
        if s.tag == "KEY0-1":
            assert s.oracle is None
        else:
            assert s.oracle["passed"] and s.oracle["exact"]
    key = next(s for s in G4.certificate.steps if s.tag == "KEY")
    assert key.oracle["dihedral"] == {"m": 3, "passed": True}


def test_fabricated_adjacent_pair_fails_at_that_step():
    cert = G4.certificate
    p = 2
    step = cert.steps[p]
    assert step.tag == "KEY0-1"
    forged = dataclasses.replace(step, types=("c", "a"))
    steps = cert.steps[:p] + (forged,) + cert.steps[p + 1 :]
    rep = verify_certificate(dataclasses.replace(cert, steps=steps), G4.graph, G4.schedule, G4.selection)
    assert not rep.ok
    assert all(f.where.startswith(f"steps[{p}]") for f in rep.failures)


def test_wrong_tag_is_rejected():
    cert = G4.certificate
    forged = dataclasses.replace(cert.steps[3], tag="KEY")
    steps = cert.steps[:3] + (forged,) + cert.steps[4:]
    rep = verify_certificate(dataclasses.replace(cert, steps=steps), G4.graph, G4.schedule, G4.selection)
    assert [f.where for f in rep.failures][0].startswith("steps[3]")


def test_relabelled_g4_is_refused():
    with pytest.raises(NotEligibleError):
        construct(g4().relabel("a", "c", 2))


def test_skewering_on_g4():
    assert check_skewering(G4.hyperplanes)
    sched = G4.hyperplanes
    for d in range(-5, 40):
        assert sched.translate(sched.descriptor(2, d)) == sched.descriptor(2, d + 16)


def test_lcm_variant_on_g4():
    c = construct(g4(), use_lcm=True)
    assert c.schedule.n == 2
    assert "".join(c.gamma.letters) == "acabd" * 2
    assert verify_certificate(c.certificate, c.graph, c.schedule, c.selection).ok


def test_shadow_oracle_distinguishes_members():
    oracle = ShadowOracle(G4.graph, G4.selection)
    step = next(s for s in G4.certificate.steps if s.tag == "KEY0-2")
    fake = dataclasses.replace(step, translation=("b",), types=("b", "b"), clique=("b", "c"))
    # Removing b from {b, c} leaves {c}: the translation c is a member, b is not.
    member = dataclasses.replace(fake, translation=("c",))
    assert oracle.confirm(fake)["passed"]
    assert not oracle.confirm(member)["passed"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_eligible_invariants(seed):
    g = random_eligible(random.Random(seed), max_vertices=8)
    c = construct(g)
    gw, ws, sched, cert = c.gamma, c.schedule, c.hyperplanes, c.certificate
    assert len(gw.letters) == gamma_length_formula(ws, c.selection, c.path)
    for pos, letter in enumerate(gw.letters):
        a, l, off = gw.locate(pos)
        assert gw.letter_at(a, l, off) == letter
    period = 2 * gw.r * gw.n
    assert len(cert.entries) == period
    keys = {(h.factor, h.step) for h in cert.descriptors}
    assert set(cert.entries) <= keys
    assert cert.start_flank.type == ws.v(1, ws.n)
    assert cert.end_flank.type == ws.v(1, 1)
    assert set(cert.coverage) == set(g.vertices)
    assert check_skewering(sched)
    rep = verify_certificate(cert, g, ws, c.selection)
    assert rep.ok, rep.failures[:3]


def test_length_formula_on_500_random_graphs():
    rng = random.Random(2024)
    for _ in range(500):
        c = construct(random_eligible(rng))
        assert len(c.gamma.letters) == gamma_length_formula(c.schedule, c.selection, c.path)
