"""Similarity and determinant-similarity witnesses, thresholds, edge sets."""

import itertools
import json
import warnings
from dataclasses import replace
from fractions import Fraction

import pytest

from fqsim import (
    DetSimilarityWitness,
    EdgeSet,
    InsufficientIntersection,
    NotADthPower,
    NotASquare,
    NotOnSphere,
    OriginInSet,
    PointSet,
    SimilarityWitness,
    Vector,
    ZeroDilation,
    all_vectors,
    edge_preset,
    find_det_similar,
    find_similar_config,
    make_field,
    pair_norms,
    random_pointset,
    similarity_threshold,
    sphere,
    sphere_experiment,
    verify_det_similarity,
    verify_similarity,
)

F3 = make_field(3)
F5 = make_field(5)


def full_plane(field):
    return PointSet(field, 2, list(all_vectors(field, 2)))


def punctured_plane(field):
    return PointSet(field, 2, [v for v in all_vectors(field, 2) if not v.is_zero()])


class TestEdgeSet:
    def test_all_pairs(self):
        assert EdgeSet.all_pairs(2).pairs == ((1, 2), (1, 3), (2, 3))

    def test_path(self):
        assert EdgeSet.path(3).pairs == ((1, 2), (2, 3), (3, 4))

    def test_star(self):
        assert EdgeSet.star(3).pairs == ((1, 2), (1, 3), (1, 4))

    def test_cycle(self):
        assert EdgeSet.cycle(3).pairs == ((1, 2), (1, 4), (2, 3), (3, 4))

    def test_cycle_needs_k_at_least_two(self):
        with pytest.raises(ValueError):
            EdgeSet.cycle(1)

    def test_nonempty_required(self):
        with pytest.raises(ValueError):
            EdgeSet(2, [])

    def test_range_checked(self):
        with pytest.raises(ValueError):
            EdgeSet(2, [(1, 4)])
        with pytest.raises(ValueError):
            EdgeSet(2, [(2, 2)])

    def test_presets_by_name(self):
        assert edge_preset("simplex", 2) == EdgeSet.all_pairs(2)
        with pytest.raises(ValueError):
            edge_preset("wheel", 2)


class TestThreshold:
    def test_examples(self):
        t = similarity_threshold(5, 2, 2)
        assert (t.tuple_size, t.space_size) == (3, 25)
        assert t.min_points == 9
        assert similarity_threshold(3, 2, 1).min_points == 5

    def test_met_by_is_squared_comparison(self):
        t = similarity_threshold(5, 2, 2)
        assert t.met_by(9) and not t.met_by(8)

    def test_degenerate_k_zero_warns(self):
        with pytest.warns(UserWarning):
            t = similarity_threshold(5, 2, 0)
        assert t.tuple_size == 1


class TestFindSimilar:
    def test_full_plane_example(self):
        w = find_similar_config(full_plane(F5), F5(4), 2)
        assert w.verified
        assert bool(verify_similarity(w))
        # independent re-check: pair norms scale by the ratio
        xn = [n.value for n in pair_norms(list(w.xs))]
        yn = [n.value for n in pair_norms(list(w.ys))]
        assert yn == [(4 * v) % 5 for v in xn]

    def test_points_come_from_the_set(self):
        e = random_pointset(13, 2, 26, seed=3)
        w = find_similar_config(e, make_field(13)(3), 3)
        assert all(x in e for x in w.xs)
        assert all(y in e for y in w.ys)

    def test_not_a_square(self):
        with pytest.raises(NotASquare):
            find_similar_config(full_plane(F5), F5(2), 2)

    def test_zero_dilation(self):
        with pytest.raises(ZeroDilation):
            find_similar_config(full_plane(F5), F5(0), 2)

    def test_ratio_one_gives_identity_similarity(self):
        e = PointSet.from_coords(F5, 2, [[0, 0], [1, 1], [2, 3]])
        w = find_similar_config(e, F5(1), 2)
        assert w.shift.is_zero()
        assert w.xs == w.ys == w.zs

    def test_insufficient_intersection_carries_count(self):
        e = PointSet.from_coords(F5, 2, [[0, 0], [1, 2]])
        with pytest.raises(InsufficientIntersection) as exc:
            find_similar_config(e, F5(4), 2)
        assert exc.value.best_count <= 2
        assert exc.value.needed == 3

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            find_similar_config(full_plane(F5), F5(4), 0)

    def test_edge_set_k_must_match(self):
        with pytest.raises(ValueError):
            find_similar_config(full_plane(F5), F5(4), 2, EdgeSet.all_pairs(3))

    def test_bound_recorded_on_witness(self):
        e = random_pointset(7, 2, 15, seed=11)
        w = find_similar_config(e, make_field(7)(2), 2)
        assert w.report.best_count >= Fraction(len(e) ** 2, 49)


class TestVerifySimilarity:
    def _witness(self):
        return find_similar_config(full_plane(F5), F5(4), 2)

    def test_verifier_accepts_finder_output(self):
        assert bool(verify_similarity(self._witness()))

    def test_perturbed_y_fails_with_norm_reason(self):
        w = self._witness()
        ys = list(w.ys)
        ys[1] = ys[1] + Vector(F5, [1, 0])
        bad = replace(w, ys=tuple(ys))
        check = verify_similarity(bad)
        assert not check
        assert any("norm relation" in r or "z[" in r for r in check.reasons)

    def test_duplicate_x_fails_distinctness(self):
        w = self._witness()
        xs = list(w.xs)
        zs = list(w.zs)
        xs[1] = xs[0]
        zs[1] = w.root * xs[0]
        ys = [z - w.shift for z in zs]
        bad = replace(w, xs=tuple(xs), ys=tuple(ys), zs=tuple(zs))
        check = verify_similarity(bad)
        assert not check
        assert any("distinctness" in r for r in check.reasons)

    def test_wrong_root_detected(self):
        w = self._witness()
        bad = replace(w, root=F5(1))
        check = verify_similarity(bad)
        assert not check
        assert any("root" in r for r in check.reasons)

    def test_monotone_under_edge_subsets(self):
        w = self._witness()
        for size in (1, 2):
            for pairs in itertools.combinations(EdgeSet.all_pairs(2).pairs, size):
                sub = replace(w, edges=EdgeSet(2, pairs))
                assert bool(verify_similarity(sub))

    def test_json_round_trip(self):
        w = self._witness()
        again = SimilarityWitness.from_json(json.loads(json.dumps(w.to_json())))
        assert bool(verify_similarity(again))
        assert again.to_json() == w.to_json()

    def test_never_raises_on_malformed_witnesses(self):
        w = self._witness()
        f7 = make_field(7)
        malformed = [
            replace(w, root=f7(2)),
            replace(w, shift=Vector(f7, [0, 0])),
            replace(w, xs=(Vector(F5, [1]),) + w.xs[1:]),
            replace(w, zs=w.zs[:-1]),
        ]
        for bad in malformed:
            check = verify_similarity(bad)
            assert not check and check.reasons


class TestFindDetSimilar:
    def test_punctured_plane_example(self):
        w = find_det_similar(punctured_plane(F5), F5(4), 2)
        assert w.verified
        assert bool(verify_det_similarity(w))
        # independent re-check with the raw 2x2 formula
        r = 4
        for i, j in itertools.combinations(range(3), 2):
            x1, x2 = w.xs[i].coords, w.xs[j].coords
            y1, y2 = w.ys[i].coords, w.ys[j].coords
            dx = (x1[0] * x2[1] - x1[1] * x2[0]) % 5
            dy = (y1[0] * y2[1] - y1[1] * y2[0]) % 5
            assert dx == r * dy % 5

    def test_ratio_one_verifies(self):
        w = find_det_similar(punctured_plane(F3), F3(1), 2)
        assert w.verified
        assert w.ys == w.zs  # root is 1

    def test_not_a_dth_power(self):
        f7 = make_field(7)
        pts = PointSet(f7, 2, [v for v in all_vectors(f7, 2) if not v.is_zero()])
        with pytest.raises(NotADthPower):
            find_det_similar(pts, f7(3), 2)

    def test_origin_rejected(self):
        with pytest.raises(OriginInSet):
            find_det_similar(full_plane(F5), F5(4), 2)

    def test_k_below_dimension_rejected(self):
        with pytest.raises(ValueError):
            find_det_similar(punctured_plane(F5), F5(4), 1)

    def test_zero_dilation(self):
        with pytest.raises(ZeroDilation):
            find_det_similar(punctured_plane(F5), F5(0), 2)

    def test_insufficient_intersection(self):
        e = PointSet.from_coords(F5, 2, [[1, 0], [0, 1]])
        with pytest.raises(InsufficientIntersection):
            find_det_similar(e, F5(4), 2)

    def test_json_round_trip(self):
        w = find_det_similar(punctured_plane(F5), F5(4), 3)
        again = DetSimilarityWitness.from_json(json.loads(json.dumps(w.to_json())))
        assert bool(verify_det_similarity(again))
        assert again.to_json() == w.to_json()

    def test_three_dimensional_witness(self):
        # cubing is a bijection mod 3, so every nonzero ratio is admissible
        pts = PointSet(F3, 3, [v for v in all_vectors(F3, 3) if not v.is_zero()])
        w = find_det_similar(pts, F3(2), 3)
        assert w.verified
        assert w.root.value ** 3 % 3 == 2
        check = verify_det_similarity(w)
        assert check.ok, check.reasons
        for combo in itertools.combinations(range(4), 3):
            cols_x = [w.xs[i] for i in combo]
            cols_y = [w.ys[i] for i in combo]
            from fqsim import det_of_columns_cofactor

            assert det_of_columns_cofactor(cols_x) == F3(2) * det_of_columns_cofactor(cols_y)

    def test_perturbation_detected(self):
        w = find_det_similar(punctured_plane(F5), F5(4), 2)
        ys = list(w.ys)
        ys[0] = ys[0] + Vector(F5, [0, 1])
        bad = replace(w, ys=tuple(ys))
        assert not verify_det_similarity(bad)

    def test_never_raises_on_malformed_witnesses(self):
        from fqsim import Matrix, SpecialLinear

        w = find_det_similar(punctured_plane(F5), F5(4), 2)
        malformed = [
            replace(w, root=make_field(7)(1)),
            replace(w, transform=SpecialLinear(Matrix.identity(F5, 3))),
            replace(w, xs=w.xs[:-1]),
        ]
        for bad in malformed:
            check = verify_det_similarity(bad)
            assert not check and check.reasons


class TestSphereExperiment:
    def test_full_sphere_mod_three(self):
        result = sphere_experiment(3, 2, 1, 3)
        assert result.transitive
        assert result.sphere_size == 4
        assert result.report.best_count == 4
        assert result.report.bound == 4
        assert result.meets_exact_threshold
        assert result.guarantee_holds

    def test_full_sphere_mod_five(self):
        result = sphere_experiment(5, 2, 1, 1)
        assert result.report.best_count == result.sphere_size

    def test_empty_set(self):
        f = make_field(5)
        empty = PointSet(f, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            result = sphere_experiment(5, 2, 1, 1, e_set=empty)
        assert result.report.best_count == 0
        assert result.report.bound == 0
        assert result.guarantee_holds

    def test_radius_zero_not_transitive(self):
        # the radius-0 sphere mod 5 contains the origin and 8 isotropic points
        result = sphere_experiment(5, 2, 0, 1)
        assert not result.transitive
        assert result.guarantee_holds  # guarantee does not apply

    def test_not_on_sphere(self):
        bad = PointSet.from_coords(F3, 2, [[1, 1]])  # norm 2, not 1
        with pytest.raises(NotOnSphere):
            sphere_experiment(3, 2, 1, 1, e_set=bad)

    def test_coarse_threshold_reported(self):
        result = sphere_experiment(3, 2, 1, 3)
        assert result.coarse_space_size == 3
        assert result.meets_coarse_threshold

    def test_subset_run(self):
        surface = sphere(7, 2, 1)
        half = PointSet(make_field(7), 2, list(surface.points[:4]))
        result = sphere_experiment(7, 2, 1, 1, e_set=half, h_set=half)
        assert result.report.best_count >= Fraction(16, len(surface))
        assert result.guarantee_holds
