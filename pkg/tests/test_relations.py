from __future__ import annotations

import numpy as np
import pytest

from spincycles.homology import CycleClassZ, build_model
from spincycles.polygon import RegimeError
from spincycles.relations import (
    CurveSystem,
    RuleError,
    TwistWord,
    chain_instance,
    chrel2_system,
    evaluate_word_z,
    rewrite_step,
    verify_chain_relation_homology,
    verify_chrel2_derivation,
    verify_hyperelliptic_word,
)
from spincycles.spin import canonical_q
from spincycles.symplectic import mat_f2_from_z, transvection_z

from conftest import polygon_from


def simple_system():
    return CurveSystem.build(
        ["a", "b", "c"],
        {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 0},
    )


class TestTwistWord:
    def test_normalize_merges_runs(self):
        w = TwistWord((("b", 1), ("b", 1), ("a", 1), ("a", -1), ("c", 2)))
        assert str(w.normalized()) == "b^2 c^2"

    def test_inverse(self):
        w = TwistWord((("a", 1), ("b", -2)))
        assert str(w.inverse()) == "b^2 a^-1"
        assert str((w * w.inverse()).normalized()) == "1"

    def test_zero_exponent_rejected(self):
        with pytest.raises(ValueError):
            TwistWord((("a", 0),))


class TestRewrite:
    def test_braid(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "b", "a"])
        assert str(rewrite_step(sys, w, "braid", 0)) == "b a b"

    def test_commute(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "c"])
        assert str(rewrite_step(sys, w, "commute", 0)) == "c a"

    def test_braid_needs_intersection_one(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "c", "a"])
        with pytest.raises(RuleError):
            rewrite_step(sys, w, "braid", 0)

    def test_commute_needs_intersection_zero(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "b"])
        with pytest.raises(RuleError):
            rewrite_step(sys, w, "commute", 0)

    def test_insert_cancel_round_trip(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "c"])
        w2 = rewrite_step(sys, w, "conjugate_insert", 1, curve="b")
        assert str(w2) == "a b b^-1 c"
        assert rewrite_step(sys, w2, "cancel", 1) == w

    def test_cancel_requires_inverse_pair(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "c"])
        with pytest.raises(RuleError):
            rewrite_step(sys, w, "cancel", 0)

    def test_bad_positions(self):
        sys = simple_system()
        w = TwistWord.from_names(["a", "b"])
        with pytest.raises(RuleError):
            rewrite_step(sys, w, "braid", 1)
        with pytest.raises(RuleError):
            rewrite_step(sys, w, "commute", 5)

    def test_rewrites_preserve_evaluation(self):
        cls = chain_instance(2)
        sys = chrel2_system()
        w = TwistWord.from_names(["a", "b", "a", "c"])
        val = evaluate_word_z(w, cls)
        w2 = rewrite_step(sys, w, "braid", 0)
        assert np.array_equal(evaluate_word_z(w2, cls), val)
        w3 = rewrite_step(sys, w2, "conjugate_insert", 2, curve="b")
        assert np.array_equal(evaluate_word_z(w3, cls), val)


class TestEvaluate:
    def test_empty_word(self):
        out = evaluate_word_z(TwistWord(()), {}, genus=2)
        assert np.array_equal(out, np.eye(4, dtype=np.int64))

    def test_cancelling_pair(self):
        cls = {"c": CycleClassZ.basis_a(2, 1)}
        w = TwistWord((("c", 1), ("c", -1)))
        assert np.array_equal(evaluate_word_z(w, cls), np.eye(4, dtype=np.int64))

    def test_elliptic_relation(self):
        # (t_a t_b)^6 = identity on the genus-1 lattice
        cls = {"a": CycleClassZ.basis_a(1, 1), "b": CycleClassZ.basis_b(1, 1)}
        w = TwistWord.from_names(["a", "b"] * 6)
        assert np.array_equal(evaluate_word_z(w, cls), np.eye(2, dtype=np.int64))

    def test_letter_order_convention(self):
        # leftmost letter acts last: word "a b" evaluates to T_a @ T_b
        cls = {"a": CycleClassZ.basis_a(1, 1), "b": CycleClassZ.basis_b(1, 1)}
        ta = transvection_z(cls["a"])
        tb = transvection_z(cls["b"])
        w = TwistWord.from_names(["a", "b"])
        assert np.array_equal(evaluate_word_z(w, cls), ta @ tb)
        assert not np.array_equal(ta @ tb, tb @ ta)

    def test_missing_class(self):
        with pytest.raises(ValueError):
            evaluate_word_z(TwistWord.from_names(["x"]), {})


class TestChainRelation:
    def test_g2_and_g3(self):
        for g in (2, 3):
            r = verify_chain_relation_homology(g)
            assert r["pass"], r
            assert r["identity_holds"]
            assert r["mod2_consistent"]
            assert r["flip_invariant"]
            assert r["bounding_pair_identity"]

    def test_instance_intersection_pattern(self):
        from spincycles.homology import pairing_z

        cls = chain_instance(2)
        assert abs(pairing_z(cls["a"], cls["b"])) == 1
        assert abs(pairing_z(cls["b"], cls["c"])) == 1
        assert pairing_z(cls["a"], cls["c"]) == 0
        assert cls["alpha"].coords == cls["beta"].coords

    def test_needs_genus_two(self):
        with pytest.raises(ValueError):
            verify_chain_relation_homology(1)

    def test_square_of_twist_trivial_mod2(self, d5):
        # twists along q = 0 classes still square to the identity mod 2
        m = build_model(d5)
        q = canonical_q(m)
        d = m.b_class((2, 1))
        assert q.eval(d) == 0
        lift = CycleClassZ(6, d.coords)
        t2 = transvection_z(lift) @ transvection_z(lift)
        assert mat_f2_from_z(t2) == mat_f2_from_z(np.eye(12, dtype=np.int64))


class TestChrel2:
    def test_replay(self):
        t = verify_chrel2_derivation()
        assert t["pass"], t
        assert len(t["steps"]) == 5
        assert t["final_word"] == "b^2 a b^2 c b^2 a b^2 c"
        assert t["all_lines_match"]
        assert t["sound"]
        assert t["reversible"]

    def test_every_line_sound(self):
        t = verify_chrel2_derivation()
        for step in t["steps"]:
            assert step["sound"] is True
            assert step["matches_expected_line"] is True

    def test_perturbed_system_fails(self):
        with pytest.raises(RuleError):
            verify_chrel2_derivation(chrel2_system(i_ac=1))

    def test_transcript_serializes(self):
        import json

        t = verify_chrel2_derivation()
        blob = json.dumps(t)
        assert json.loads(blob) == t


class TestHyperellipticWord:
    def test_corpus_polygons(self, rect_4x2, trapezoid_g2, trapezoid_g2_cut):
        for p in (rect_4x2, trapezoid_g2, trapezoid_g2_cut):
            r = verify_hyperelliptic_word(p)
            assert r["pass"], r
            assert r["is_minus_identity"] and r["flip_invariant"]

    def test_rectangles_up_to_g6(self):
        for g in range(2, 7):
            p = polygon_from([(0, 0), (g + 1, 0), (g + 1, 2), (0, 2)])
            r = verify_hyperelliptic_word(p)
            assert r["genus"] == g
            assert r["word_length"] == 2 * (2 * g + 1)
            assert r["pass"], r

    def test_wrong_regime(self, d5):
        with pytest.raises(RegimeError):
            verify_hyperelliptic_word(d5)

    def test_random_strip_polygons(self):
        import random

        from spincycles.polygon import classify_regime

        from conftest import random_smooth_polygon

        rng = random.Random(77)
        hits = 0
        tried = 0
        while tried < 400 and hits < 12:
            p = random_smooth_polygon(rng)
            tried += 1
            if p is None or classify_regime(p) != "hyperelliptic":
                continue
            hits += 1
            r = verify_hyperelliptic_word(p)
            assert r["pass"], (p.vertices, r)
        assert hits >= 5
