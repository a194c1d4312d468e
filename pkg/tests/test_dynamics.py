"""Escape dynamics and the inverse-iteration sampler, checked against the two
closed-form Julia sets (circle for z^2, segment [-2,2] for z^2 - 2)."""

import numpy as np
import pytest

import xjulia as xj
from xjulia import dynamics as dyn
from xjulia.poly import Poly


class TestEscapeRadius:
    def test_pure_square(self, square_escape):
        assert square_escape.r_escape == 2.0

    def test_conjugated_chebyshev(self, cheb_escape):
        assert cheb_escape.r_escape == 4.0

    def test_doubling_inequality_sampled(self, square_escape):
        rng = np.random.default_rng(0)
        z = rng.uniform(2.02, 20.0, 200) * np.exp(2j * np.pi * rng.uniform(0, 1, 200))
        assert np.all(np.abs(square_escape.poly(z)) > 2 * np.abs(z))

    def test_family_member_passes_check(self, stock_escape):
        # construction itself runs the 200-point sampling gate
        assert stock_escape[50].r_escape >= 1.0

    def test_degree_one_rejected(self):
        with pytest.raises(ValueError):
            dyn.escape_radius(Poly([1.0, 2.0]))

    def test_batch_shares_uniform_bound(self, stock_escape):
        bounds = {e.r_uniform for e in stock_escape.values()}
        assert len(bounds) == 1
        assert all(e.r_uniform >= e.r_escape for e in stock_escape.values())


class TestRaster:
    def test_square_filled_set_is_unit_disk(self, square_escape):
        r = dyn.escape_raster(square_escape, half_width=1.5, resolution=512,
                              max_iter=100)
        xs, ys = r.pixel_centers()
        zz = np.abs(xs[None, :] + 1j * ys[:, None])
        pix = r.pixel_width
        inside = zz <= 1.0 - pix
        outside = zz >= 1.0 + pix
        bounded = r.counts == r.max_iter
        assert np.all(bounded[inside])
        assert not np.any(bounded[outside])

    def test_square_negation_symmetry(self, square_escape):
        r = dyn.escape_raster(square_escape, half_width=1.5, resolution=256,
                              max_iter=60)
        assert np.array_equal(r.counts, r.counts[::-1, ::-1])

    def test_chebyshev_segment(self, cheb_escape):
        # odd resolution puts one pixel row exactly on the real axis; there the
        # bounded set is [-2, 2] sharp
        r = dyn.escape_raster(cheb_escape, half_width=3.0, resolution=513,
                              max_iter=200)
        xs, ys = r.pixel_centers()
        row = int(np.argmin(np.abs(ys)))
        assert abs(ys[row]) < 1e-12
        bounded = r.counts[row] == r.max_iter
        # non-escaped cells only within one pixel of [-2, 2], all of [-2, 2] kept
        assert np.all(np.abs(xs[bounded]) <= 2.0 + r.pixel_width)
        assert np.all(bounded[np.abs(xs) <= 2.0])
        # every other row escapes eventually
        others = np.delete(np.arange(513), row)
        assert np.all(r.counts[others] < r.max_iter)

    def test_counts_zero_outside_escape_disk(self, square_escape):
        r = dyn.escape_raster(square_escape, half_width=8.0, resolution=64,
                              max_iter=10)
        xs, ys = r.pixel_centers()
        zz = np.abs(xs[None, :] + 1j * ys[:, None])
        assert np.all(r.counts[zz > 2.0] == 0)

    def test_family_raster_inside_uniform_bound(self, stock_escape):
        e = stock_escape[20]
        r = dyn.escape_raster(e, half_width=2.0, resolution=256, max_iter=60)
        xs, ys = r.pixel_centers()
        zz = np.abs(xs[None, :] + 1j * ys[:, None])
        assert np.all(zz[r.counts == r.max_iter] <= e.r_uniform + 1e-6)

    def test_resolution_cap(self, square_escape):
        with pytest.raises(ValueError):
            dyn.escape_raster(square_escape, resolution=0)

    def test_pgm_bytes(self, square_escape):
        r = dyn.escape_raster(square_escape, half_width=1.5, resolution=32,
                              max_iter=50)
        blob = dyn.raster_to_pgm(r)
        assert blob.startswith(b"P5\n32 32\n255\n")
        assert len(blob) == len(b"P5\n32 32\n255\n") + 32 * 32
        body = np.frombuffer(blob[len(b"P5\n32 32\n255\n"):], dtype=np.uint8)
        assert body.max() == 255  # non-escaped pixels map to maxval


class TestBrolinSampler:
    def test_square_lands_on_circle(self, square_sample):
        assert np.max(np.abs(np.abs(square_sample.points) - 1.0)) <= 1e-9

    def test_square_means_vanish(self, square_sample):
        z = square_sample.points
        assert abs(z.mean()) <= 0.02
        assert abs((z ** 2).mean()) <= 0.02

    def test_chebyshev_real_support(self, cheb_sample):
        assert np.max(np.abs(cheb_sample.points.imag)) <= 1e-9

    def test_chebyshev_rescaled_arcsine(self, cheb_sample):
        mu = xj.EmpiricalMeasure.from_points(cheb_sample.points / 2.0)
        assert xj.ks_distance_real(mu, xj.arcsine_cdf) <= 0.02

    def test_samples_within_uniform_bound(self, stock_escape, stock_samples):
        for n, s in stock_samples.items():
            assert np.max(np.abs(s.points)) <= stock_escape[n].r_uniform + 1e-6

    def test_determinism_bit_identical(self, square_escape):
        a = dyn.brolin_sample(square_escape, 500, burn_in=20, seed=42)
        b = dyn.brolin_sample(square_escape, 500, burn_in=20, seed=42)
        assert np.array_equal(a.points, b.points)

    def test_seed_changes_stream(self, square_escape):
        a = dyn.brolin_sample(square_escape, 200, burn_in=20, seed=1)
        b = dyn.brolin_sample(square_escape, 200, burn_in=20, seed=2)
        assert not np.array_equal(a.points, b.points)

    def test_worker_partition_deterministic(self, cheb_escape):
        a = dyn.brolin_sample(cheb_escape, 400, burn_in=20, seed=9, n_workers=3)
        b = dyn.brolin_sample(cheb_escape, 400, burn_in=20, seed=9, n_workers=3)
        assert np.array_equal(a.points, b.points)
        assert a.size == 400

    def test_sample_count_cap(self, square_escape):
        with pytest.raises(ValueError):
            dyn.brolin_sample(square_escape, 10 ** 6 + 1, seed=0)

    def test_csv_format(self, square_escape):
        s = dyn.brolin_sample(square_escape, 3, burn_in=5, seed=0)
        lines = s.to_csv().strip().splitlines()
        assert lines[0] == "re,im"
        assert len(lines) == 4


class TestInvariance:
    def test_square_forward_invariance(self, square_escape, square_sample):
        assert dyn.forward_invariance_check(square_escape, square_sample, 0.01) == 1.0

    def test_chebyshev_forward_invariance(self, cheb_escape, cheb_sample):
        eps = 3 * dyn.median_nn_spacing(cheb_sample.points)
        assert dyn.forward_invariance_check(cheb_escape, cheb_sample, eps) >= 0.99

    def test_family_forward_invariance(self, stock_escape, stock_samples):
        s = stock_samples[20]
        eps = 3 * dyn.median_nn_spacing(s.points)
        assert dyn.forward_invariance_check(stock_escape[20], s, eps) >= 0.99

    def test_pullback_identity(self, stock_escape, stock_samples):
        gap = dyn.pullback_refinement_gap(stock_escape[20], stock_samples[20],
                                          n_sub=500, seed=7)
        assert gap <= 0.02

    def test_raster_sample_consistency_square(self, square_escape, square_sample):
        # depth 8 makes the non-escaped region the disk plus a one-pixel smear,
        # so boundary samples stay inside it
        r = dyn.escape_raster(square_escape, half_width=1.5, resolution=1024,
                              max_iter=8)
        hits = sum(1 for z in square_sample.points[:20000]
                   if (ij := r.pixel_index(complex(z))) is not None
                   and r.counts[ij] == r.max_iter)
        assert hits / 20000 >= 0.99

    def test_raster_sample_consistency_family(self, stock_escape, stock_samples):
        e = stock_escape[20]
        r = dyn.escape_raster(e, half_width=1.6, resolution=1024, max_iter=2)
        pts = stock_samples[20].points
        hits = sum(1 for z in pts
                   if (ij := r.pixel_index(complex(z))) is not None
                   and r.counts[ij] == r.max_iter)
        assert hits / len(pts) >= 0.99


class TestPreimages:
    def test_square_one_in_box(self, square_escape):
        assert dyn.preimage_count_in_set(square_escape, 4.0,
                                         (1.9, 2.1, -0.1, 0.1)) == 1

    def test_square_none_in_offset_box(self, square_escape):
        # preimages of -1 are +-i; a right-half-plane box away from them is empty
        assert dyn.preimage_count_in_set(square_escape, -1.0,
                                         (1.5, 2.5, -0.5, 0.5)) == 0

    def test_rectangle_touching_interval_rejected(self, square_escape):
        with pytest.raises(ValueError):
            dyn.preimage_count_in_set(square_escape, 4.0, (-0.5, 0.5, -0.5, 0.5))

    def test_family_counts_do_not_grow(self, stock_escape, stock_samples):
        region = (1.5, 2.5, -0.5, 0.5)
        rng = np.random.Generator(np.random.Philox(key=11))
        counts = {}
        for n in (10, 20, 30, 40, 50):
            pts = stock_samples[n].points
            targets = rng.choice(pts, size=20, replace=False)
            counts[n] = max(dyn.preimage_count_in_set(stock_escape[n], w, region)
                            for w in targets)
        late = max(counts[40], counts[50])
        early = max(counts[10], counts[20])
        assert late <= early + 1

    def test_boundary_preimage_containment(self, square_escape, stock_escape):
        ok, worst = dyn.boundary_preimage_containment(square_escape)
        assert ok and worst <= 1.0
        for n in (10, 30, 50):
            ok, worst = dyn.boundary_preimage_containment(stock_escape[n])
            assert ok, f"containment failed at n={n} (worst {worst})"
