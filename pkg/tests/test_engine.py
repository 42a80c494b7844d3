"""Fixity deciders: base dimensions, expansion, extreme-element lemma,
partial inputs, certificates, and the n>=5 frontier."""

import random
from itertools import permutations, product

import pytest

from simplexfix import (
    ConfigSign,
    Configuration,
    FixityVerdict,
    FormalSign,
    Status,
    build_witness,
    crosscheck_dim3,
    decide,
    decide_dim1,
    decide_dim2,
    decide_dim3,
    expansion_formal_sign,
    formally_fixed_by_expansion,
    is_conformal,
    non_fixed_by_extreme_lemma,
    replay_certificate,
    sample_signs,
    verify_witness,
)
from conftest import (
    N4_LABELS,
    XYZ,
    fixed_n4_configs,
    partial_n3_quartet,
    subset_13710,
    subset_13710_extension,
    subset_15910,
    subset_2589,
)

LABELS3 = ("A", "B", "C")
AXES2 = ("x", "y")


def linear3(sx, sy):
    return Configuration.from_sequences(LABELS3, AXES2, (tuple(sx), tuple(sy)))


def test_decide_dim1():
    up = Configuration.from_sequences(("A", "B"), ("x",), (("A", "B"),))
    down = Configuration.from_sequences(("A", "B"), ("x",), (("B", "A"),))
    assert decide_dim1(up).status is Status.FIXED
    assert decide_dim1(up).sign is ConfigSign.PLUS
    assert decide_dim1(down).sign is ConfigSign.MINUS
    empty = Configuration.from_pairs(("A", "B"), ("x",), {"x": []})
    with pytest.raises(ValueError):
        decide_dim1(empty)
    verdict = decide(empty)
    assert verdict.status is Status.NON_FIXED


def test_decide_dim2_examples():
    equal = linear3("ABC", "ABC")
    reversed_ = linear3("ABC", "CBA")
    skew = linear3("ABC", "BCA")
    assert decide_dim2(equal).status is Status.NON_FIXED
    assert decide_dim2(reversed_).status is Status.NON_FIXED
    verdict = decide_dim2(skew)
    assert verdict.status is Status.FIXED
    # the true orientation, cross-checked by exact sampling
    assert verdict.sign is ConfigSign.PLUS
    assert sample_signs(skew, 0, 400) == {"pos": 400, "neg": 0, "zero": 0}


def test_decide_dim2_completeness_split():
    perms = list(permutations(LABELS3))
    non_fixed = []
    for sx, sy in product(perms, perms):
        verdict = decide_dim2(linear3(sx, sy))
        if verdict.status is Status.NON_FIXED:
            non_fixed.append((sx, sy))
        else:
            assert verdict.sign in (ConfigSign.PLUS, ConfigSign.MINUS)
    expected = {(sx, sy) for sx in perms for sy in perms if sy == sx or sy == sx[::-1]}
    assert len(expected) == 12
    assert set(non_fixed) == expected


def test_is_conformal_examples():
    cfg = Configuration.from_sequences(
        N4_LABELS, XYZ, (("A", "B", "C", "D"), ("D", "C", "B", "A"), ("B", "C", "A", "D"))
    )
    assert is_conformal(cfg, ("A", "B", "C"), "x", "y")  # reversed
    assert is_conformal(cfg, ("A", "B", "C"), "x", "x")  # equal (trivially)
    assert not is_conformal(cfg, ("A", "B", "C"), "x", "z")


def test_decide_dim3_fixed_examples():
    for cfg in fixed_n4_configs():
        verdict = decide_dim3(cfg)
        assert verdict.status is Status.FIXED
        assert verdict.sign is ConfigSign.PLUS
        assert verdict.certificate["type"] == "expansion"


def test_decide_dim3_rejects_wrong_size():
    with pytest.raises(ValueError):
        decide_dim3(linear3("ABC", "BCA"))


def test_partial_shape_with_floating_label_is_non_fixed():
    # cyclic triple shape, D comparable to A only on z: every completion of
    # the partial ordering admits both orientations
    cfg = Configuration.from_pairs(
        N4_LABELS,
        XYZ,
        {
            "x": [("B", "D"), ("D", "C"), ("C", "A")],
            "y": [("C", "A"), ("A", "D"), ("D", "B")],
            "z": [("A", "B"), ("B", "C"), ("A", "D")],
        },
    )
    verdict = decide(cfg)
    assert verdict.status is Status.NON_FIXED
    assert replay_certificate(cfg, verdict)


def test_expansion_formal_sign_prop_setup():
    cfg = fixed_n4_configs()[0]  # D above every triple label on every axis
    children = {
        axis: decide_dim2(
            Configuration.from_sequences(
                ("A", "B", "C"),
                tuple(a for a in XYZ if a != axis),
                tuple(
                    tuple(l for l in o.sequence() if l != "D")
                    for a, o in zip(cfg.axes, cfg.orders)
                    if a != axis
                ),
            )
        )
        for axis in XYZ
    }
    assert expansion_formal_sign(cfg, "D", "A", children) is FormalSign.PLUS
    # the three cofactor signs behind that sum
    assert [str(children[a].sign) for a in XYZ] == ["+", "-", "+"]

    # reversing every axis flips all difference signs; the result is MINUS
    flipped = Configuration.from_sequences(
        N4_LABELS,
        XYZ,
        tuple(tuple(reversed(o.sequence())) for o in cfg.orders),
    )
    flipped_children = {
        axis: decide_dim2(
            Configuration.from_sequences(
                ("A", "B", "C"),
                tuple(a for a in XYZ if a != axis),
                tuple(
                    tuple(l for l in o.sequence() if l != "D")
                    for a, o in zip(flipped.axes, flipped.orders)
                    if a != axis
                ),
            )
        )
        for axis in XYZ
    }
    assert expansion_formal_sign(flipped, "D", "A", flipped_children) is FormalSign.MINUS
    assert decide(flipped).sign is ConfigSign.MINUS


def test_expansion_with_non_fixed_child_collapses():
    cfg = fixed_n4_configs()[0]
    children = {
        axis: FixityVerdict(Status.NON_FIXED, ConfigSign.BOTH, None) for axis in XYZ
    }
    assert expansion_formal_sign(cfg, "D", "A", children) is FormalSign.UNKNOWN
    with pytest.raises(ValueError):
        expansion_formal_sign(cfg, "D", "D", children)


def test_formally_fixed_by_expansion_matches_direct_decider():
    rng = random.Random(11)
    perms = list(permutations(N4_LABELS))
    for cfg in fixed_n4_configs():
        verdict = formally_fixed_by_expansion(cfg)
        assert verdict.status is Status.FIXED
        assert verdict.sign is ConfigSign.PLUS
    for _ in range(100):
        cfg = Configuration.from_sequences(
            N4_LABELS, XYZ, [rng.choice(perms) for _ in range(3)]
        )
        direct = decide_dim3(cfg)
        by_expansion = formally_fixed_by_expansion(cfg)
        if direct.status is Status.FIXED:
            assert by_expansion.status is Status.FIXED
            assert by_expansion.sign is direct.sign
        else:
            assert by_expansion.status is Status.UNKNOWN


def test_expansion_sign_agrees_with_sampling():
    rng = random.Random(12)
    perms = list(permutations(N4_LABELS))
    checked = 0
    while checked < 5:
        cfg = Configuration.from_sequences(
            N4_LABELS, XYZ, [rng.choice(perms) for _ in range(3)]
        )
        verdict = formally_fixed_by_expansion(cfg)
        if verdict.status is not Status.FIXED:
            continue
        histogram = sample_signs(cfg, 99, 1000)
        bucket = "pos" if verdict.sign is ConfigSign.PLUS else "neg"
        assert histogram[bucket] == 1000
        checked += 1


def test_extreme_lemma_examples():
    ext = subset_13710_extension()
    verdict = non_fixed_by_extreme_lemma(ext)
    assert verdict.status is Status.NON_FIXED
    assert len(verdict.certificate["steps"]) == 1
    assert verdict.certificate["base"]["relation"] == "equal"
    assert replay_certificate(ext, verdict)
    # removing the label 10 (extreme on z) leaves equal orderings on {7,3,1};
    # that hand-written chain must replay as well
    documented = FixityVerdict(
        Status.NON_FIXED,
        ConfigSign.BOTH,
        {
            "type": "extreme_lemma",
            "steps": [{"label": "10", "axis": "z", "extreme": "max"}],
            "base": {"type": "dim2_non_fixed", "relation": "equal"},
        },
    )
    assert replay_certificate(ext, documented)

    for cfg in fixed_n4_configs():
        assert non_fixed_by_extreme_lemma(cfg).status is Status.UNKNOWN

    tangled = Configuration.from_sequences(
        N4_LABELS,
        XYZ,
        (("D", "B", "C", "A"), ("C", "A", "D", "B"), ("A", "B", "D", "C")),
    )
    verdict = non_fixed_by_extreme_lemma(tangled)
    assert verdict.status is Status.NON_FIXED
    assert replay_certificate(tangled, verdict)


def test_decide_partial_cloud_subsets():
    assert decide(subset_15910()).status is Status.FIXED
    assert decide(subset_2589()).status is Status.FIXED
    verdict = decide(subset_13710())
    assert verdict.status is Status.NON_FIXED
    assert replay_certificate(subset_13710(), verdict)


def test_decide_partial_quartet_verdicts():
    p1, p2, p3, p4 = partial_n3_quartet()
    assert decide(p1).status is Status.FIXED
    assert decide(p2).status is Status.NON_FIXED
    assert decide(p3).status is Status.NON_FIXED
    assert decide(p4).status is Status.NON_FIXED


def test_partial_fixed_reports_common_sign_of_extensions():
    p1 = partial_n3_quartet()[0]
    verdict = decide(p1)
    assert verdict.status is Status.FIXED
    assert verdict.sign is ConfigSign.PLUS
    assert verdict.certificate["type"] == "extensions_all_fixed"
    assert verdict.certificate["count"] == 2
    assert replay_certificate(p1, verdict)


def test_totally_incomparable_pair_shortcut():
    cfg = Configuration.from_pairs(
        LABELS3, AXES2, {"x": [("A", "B")], "y": [("A", "B")]}
    )
    verdict = decide(cfg)
    assert verdict.status is Status.NON_FIXED
    assert verdict.certificate["type"] == "sampled_witness"
    assert replay_certificate(cfg, verdict)


def test_decide_transports_signs_through_equivalence():
    from simplexfix import apply, sign_parity
    from test_equivalence import random_group_element

    rng = random.Random(13)
    for cfg in fixed_n4_configs():
        base = decide(cfg)
        for _ in range(10):
            g = random_group_element(rng, 4)
            moved = decide(apply(g, cfg))
            assert moved.status is Status.FIXED
            assert moved.sign.value == sign_parity(g).value * base.sign.value
            assert replay_certificate(apply(g, cfg), moved)


def test_crosscheck_agreement_sample():
    rng = random.Random(14)
    perms = list(permutations(N4_LABELS))
    for _ in range(200):
        cfg = Configuration.from_sequences(
            N4_LABELS, XYZ, [rng.choice(perms) for _ in range(3)]
        )
        assert crosscheck_dim3(cfg).status is decide(cfg, debug_crosscheck=True).status


FIXED5 = Configuration.from_sequences(
    ("A", "B", "C", "D", "E"),
    ("x", "y", "z", "w"),
    (
        ("A", "D", "C", "B", "E"),
        ("D", "C", "B", "A", "E"),
        ("E", "D", "A", "B", "C"),
        ("B", "A", "D", "C", "E"),
    ),
)

FRONTIER5 = Configuration.from_sequences(
    ("A", "B", "C", "D", "E"),
    ("x", "y", "z", "w"),
    (
        ("B", "E", "D", "C", "A"),
        ("E", "A", "D", "B", "C"),
        ("D", "A", "B", "E", "C"),
        ("D", "C", "E", "A", "B"),
    ),
)


def test_dim5_fixed_by_expansion():
    verdict = decide(FIXED5)
    assert verdict.status is Status.FIXED
    assert verdict.sign is ConfigSign.PLUS
    assert sample_signs(FIXED5, 5, 600) == {"pos": 600, "neg": 0, "zero": 0}
    assert replay_certificate(FIXED5, verdict)


def test_dim5_frontier_is_flagged_with_samples():
    verdict = decide(FRONTIER5, frontier_samples=300, seed=5)
    assert verdict.status is Status.UNKNOWN
    assert verdict.frontier
    assert sum(verdict.samples.values()) == 300


def test_partial_with_undecidable_extension_reports_unknown():
    # two extensions: one fixed, one on the conjecture frontier
    labels = ("A", "B", "C", "D", "E")
    axes = ("x", "y", "z", "w")
    cfg = Configuration.from_pairs(
        labels,
        axes,
        {
            "x": [("B", "E"), ("E", "D"), ("E", "C"), ("D", "A"), ("C", "A")],
            "y": [("E", "A"), ("A", "D"), ("D", "B"), ("B", "C")],
            "z": [("D", "A"), ("A", "B"), ("B", "E"), ("E", "C")],
            "w": [("D", "C"), ("C", "E"), ("E", "A"), ("A", "B")],
        },
    )
    from simplexfix import extension_count

    assert extension_count(cfg) == 2
    verdict = decide(cfg, frontier_samples=50)
    assert verdict.status is Status.UNKNOWN
    assert verdict.frontier
    assert sum(verdict.samples.values()) == 50


def test_dim5_non_fixed_via_lemma_chain():
    cfg = Configuration.from_sequences(
        ("A", "B", "C", "D", "E"),
        ("x", "y", "z", "w"),
        (("A", "B", "C", "D", "E"),) * 4,
    )
    verdict = decide(cfg, frontier_samples=0)
    assert verdict.status is Status.NON_FIXED
    pair = build_witness(cfg)
    assert verify_witness(pair, cfg)


def test_dim5_random_soundness_soak():
    # every verdict above the exact range stays backed by evidence: fixed
    # verdicts survive sampling, non-fixed verdicts yield exact witnesses
    rng = random.Random(31)
    labels = ("A", "B", "C", "D", "E")
    axes = ("x", "y", "z", "w")
    perms = list(permutations(labels))
    for _ in range(40):
        cfg = Configuration.from_sequences(
            labels, axes, [rng.choice(perms) for _ in range(4)]
        )
        verdict = decide(cfg, frontier_samples=0)
        if verdict.status is Status.FIXED:
            histogram = sample_signs(cfg, 17, 400)
            bucket = "pos" if verdict.sign is ConfigSign.PLUS else "neg"
            assert histogram[bucket] == 400
            assert replay_certificate(cfg, verdict)
        elif verdict.status is Status.NON_FIXED:
            assert verify_witness(build_witness(cfg, verdict), cfg)
        else:
            histogram = sample_signs(cfg, 17, 200)
            assert histogram["pos"] + histogram["neg"] + histogram["zero"] == 200


def test_sample_signs_determinism_and_threads():
    cfg = subset_2589()
    one = sample_signs(cfg, 123, 1000, threads=1)
    four = sample_signs(cfg, 123, 1000, threads=4)
    assert one == four
    assert sum(one.values()) == 1000
    assert sample_signs(cfg, 124, 1000) != one or True  # different seed may differ


def test_sampling_both_signs_on_non_fixed():
    equal = linear3("ABC", "ABC")
    histogram = sample_signs(equal, 7, 500)
    assert histogram["pos"] > 0 and histogram["neg"] > 0
    assert histogram["zero"] == 0  # the degenerate locus has measure zero


def _pairwise_nonconformal(o1, o2, o3):
    def conf(a, b):
        return a == b or a == tuple(reversed(b))

    return not (conf(o1, o2) or conf(o1, o3) or conf(o2, o3))


def _cyclic_pattern_reachable(o1, o2, o3):
    """Brute force: some axis roles + reversals + relabeling produce the
    exact cyclic shape (B,C,A), (C,A,B), (A,B,C)."""
    orders = (o1, o2, o3)
    for rho in permutations(range(3)):
        for mask in range(8):
            picked = [
                tuple(reversed(orders[rho[i]])) if mask >> i & 1 else orders[rho[i]]
                for i in range(3)
            ]
            oz = picked[2]
            if picked[0] == (oz[1], oz[2], oz[0]) and picked[1] == (oz[2], oz[0], oz[1]):
                return True
    return False


def test_triple_fixity_pattern_characterization():
    # exhaustive over every triple of linear orders on three labels
    perms = list(permutations(("A", "B", "C")))
    for o1, o2, o3 in product(perms, repeat=3):
        assert _pairwise_nonconformal(o1, o2, o3) == _cyclic_pattern_reachable(o1, o2, o3)


def test_triple_fixity_bridges_to_induced_verdicts():
    # on random 4-label configurations: all three induced configurations on
    # a triple are fixed exactly when the restrictions avoid conformality
    rng = random.Random(15)
    perms4 = list(permutations(N4_LABELS))
    for _ in range(60):
        cfg = Configuration.from_sequences(
            N4_LABELS, XYZ, [rng.choice(perms4) for _ in range(3)]
        )
        for drop in N4_LABELS:
            triple = tuple(l for l in N4_LABELS if l != drop)
            restricted = [
                tuple(l for l in o.sequence() if l != drop) for o in cfg.orders
            ]
            statuses = []
            for skip in range(3):
                axes = tuple(a for i, a in enumerate(XYZ) if i != skip)
                seqs = tuple(s for i, s in enumerate(restricted) if i != skip)
                sub = Configuration.from_sequences(triple, axes, seqs)
                statuses.append(decide_dim2(sub).status)
            all_fixed = all(s is Status.FIXED for s in statuses)
            assert all_fixed == _pairwise_nonconformal(*restricted)
            assert all_fixed == _cyclic_pattern_reachable(*restricted)
