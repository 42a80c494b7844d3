"""Point clouds, derived configurations, and the subset scan."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexfix import (
    InputFormatError,
    PointAssignment,
    PointCloud,
    Status,
    derive_configuration,
    satisfies,
    scan,
)
from simplexfix.landmark import jitter


def small_cloud():
    return PointCloud.from_points(
        {
            "A": (0, 0, 0),
            "B": (1, 3, 2),
            "C": (2, 1, 5),
            "D": (4, 2, 1),
            "E": (3, 5, 4),
        }
    )


def test_derive_configuration_linear_when_distinct():
    cloud = small_cloud()
    cfg = derive_configuration(cloud, ("A", "B", "C", "D"))
    assert cfg.is_linear()
    assert cfg.orders[0].sequence() == ("A", "B", "C", "D")


def test_tie_leaves_pair_incomparable_on_that_axis_only():
    cloud = PointCloud.from_points(
        {"A": (0, 0), "B": (0, 1), "C": (1, 2)}, axes=("x", "y")
    )
    cfg = derive_configuration(cloud, ("A", "B", "C"))
    x_order = cfg.order_for("x")
    assert not x_order.comparable("A", "B")
    assert x_order.less("A", "C") and x_order.less("B", "C")
    assert cfg.order_for("y").is_linear()


def test_derive_configuration_validation():
    cloud = small_cloud()
    with pytest.raises(KeyError):
        derive_configuration(cloud, ("A", "B", "C", "Z"))
    with pytest.raises(ValueError):
        derive_configuration(cloud, ("A", "B", "C"))


@settings(deadline=None, max_examples=25)
@given(
    st.integers(min_value=1, max_value=9),
    st.integers(min_value=-20, max_value=20),
)
def test_derive_configuration_only_depends_on_order(scale, shift):
    cloud = small_cloud()
    transformed = PointCloud.from_points(
        {
            lab: tuple(
                (cloud.value(lab, a) * scale + shift) ** 3
                for a in cloud.axes
            )
            for lab in cloud.labels
        },
        axes=cloud.axes,
    )
    subset = ("A", "B", "C", "D")
    assert derive_configuration(cloud, subset) == derive_configuration(transformed, subset)


def test_satisfaction_of_derived_configuration():
    cloud = small_cloud()
    subset = ("B", "C", "D", "E")
    cfg = derive_configuration(cloud, subset)
    assignment = PointAssignment.from_points(
        {lab: tuple(cloud.value(lab, a) for a in cloud.axes) for lab in subset},
        cloud.axes,
    )
    assert satisfies(assignment, cfg)


def test_scan_counts_and_determinism():
    cloud = small_cloud()
    report = scan(cloud)
    assert len(report.results) == 5  # C(5, 4)
    assert sum(report.counts.values()) == 5
    assert [r.labels for r in report.results] == list(combinations(cloud.labels, 4))
    assert scan(cloud, threads=3).to_json_objects() == report.to_json_objects()
    # generic position in 3D never leaves the decider undecided
    assert report.counts["unknown"] == 0


def test_scan_single_subset_matches_decide():
    cloud = PointCloud.from_points(
        {"A": (0, 0, 0), "B": (1, 3, 2), "C": (2, 1, 5), "D": (4, 2, 1)}
    )
    report = scan(cloud)
    assert len(report.results) == 1
    from simplexfix import decide

    direct = decide(derive_configuration(cloud, cloud.labels))
    assert report.results[0].verdict.status is direct.status


def test_shipped_cloud_regression_subsets(cloud_csv_path):
    cloud = PointCloud.from_csv(cloud_csv_path.read_text())
    report = scan(cloud)
    assert len(report.results) == 210
    by_subset = {r.labels: r.verdict for r in report.results}
    assert by_subset[("1", "5", "9", "10")].status is Status.FIXED
    assert by_subset[("2", "5", "8", "9")].status is Status.FIXED
    assert by_subset[("1", "3", "7", "10")].status is Status.NON_FIXED
    assert sum(report.counts.values()) == 210


def test_shipped_cloud_reproduces_known_relations(cloud_csv_path):
    cloud = PointCloud.from_csv(cloud_csv_path.read_text())
    cfg = derive_configuration(cloud, ("1", "5", "9", "10"))
    x = cfg.order_for("x")
    assert x.less("9", "1") and x.less("1", "10") and x.less("9", "5") and x.less("5", "10")
    assert not x.comparable("1", "5")
    y = cfg.order_for("y")
    assert y.less("5", "9") and y.less("9", "1") and y.less("5", "10") and y.less("10", "1")
    assert not y.comparable("9", "10")
    z = cfg.order_for("z")
    for low in ("1", "5"):
        for high in ("9", "10"):
            assert z.less(low, high)
    assert not z.comparable("1", "5") and not z.comparable("9", "10")


def test_jitter_breaks_ties_deterministically(cloud_csv_path):
    cloud = PointCloud.from_csv(cloud_csv_path.read_text())
    wobbled = jitter(cloud, 42)
    assert jitter(cloud, 42).values == wobbled.values
    for axis in wobbled.axes:
        values = [wobbled.value(lab, axis) for lab in wobbled.labels]
        assert len(set(values)) == len(values)
    # prior strict relations survive
    for axis in cloud.axes:
        for a in cloud.labels:
            for b in cloud.labels:
                if cloud.value(a, axis) < cloud.value(b, axis):
                    assert wobbled.value(a, axis) < wobbled.value(b, axis)
    report = scan(cloud, jitter_seed=42)
    assert report.summary()["exact"] is False
    assert report.summary()["jitter"] == 42
    assert all(r.configuration.is_linear() for r in report.results)


def test_csv_parsing_and_errors():
    cloud = PointCloud.from_csv("# note\nlabel,x,y\nP,0.5,1\nQ,1/3,2\n")
    assert cloud.value("Q", "x") == Fraction(1, 3)
    assert cloud.value("P", "x") == Fraction(1, 2)

    with pytest.raises(InputFormatError) as err:
        PointCloud.from_csv("label,x,y\nP,0.5\n")
    assert err.value.line == 2

    with pytest.raises(InputFormatError) as err:
        PointCloud.from_csv("label,x,y\nP,zero,1\n")
    assert err.value.line == 2 and err.value.column == 2

    with pytest.raises(InputFormatError):
        PointCloud.from_csv("point,x,y\nP,0,1\n")

    with pytest.raises(InputFormatError):
        PointCloud.from_csv("label,x,y\nP,0,1\nP,2,3\n")

    with pytest.raises(InputFormatError):
        PointCloud.from_csv("")


def test_scan_needs_enough_points():
    tiny = PointCloud.from_points({"A": (0, 0, 0), "B": (1, 1, 1)})
    with pytest.raises(ValueError):
        scan(tiny)


@settings(deadline=None, max_examples=20)
@given(st.randoms(use_true_random=False))
def test_generic_position_clouds_always_decide(rng):
    # distinct per-axis values: every derived configuration is linear and
    # the 3D decider never reports unknown; each subset's own coordinates
    # satisfy its derived configuration
    coords = {}
    for axis_index in range(3):
        column = rng.sample(range(100), 6)
        for i, lab in enumerate("ABCDEF"):
            coords.setdefault(lab, [0, 0, 0])[axis_index] = column[i]
    cloud = PointCloud.from_points({lab: tuple(v) for lab, v in coords.items()})
    report = scan(cloud)
    assert len(report.results) == 15  # C(6, 4)
    assert report.counts["unknown"] == 0
    for result in report.results:
        assert result.configuration.is_linear()
        assignment = PointAssignment.from_points(
            {lab: tuple(cloud.value(lab, a) for a in cloud.axes) for lab in result.labels},
            cloud.axes,
        )
        assert satisfies(assignment, result.configuration)
