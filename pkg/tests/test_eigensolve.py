"""Certified eigendecomposition: kernels, ordering, grouping, normalization.

Hand oracles used below (unit weights, zero potential):

  path P2   eigenvalues 0, 2
  path P3   eigenvalues 0, 1, 3 with eigenvectors (1,1,1), (1,0,-1), (1,-2,1)
  star S5   eigenvalues 0, 1, 1, 1, 5
"""
import os
import subprocess
import sys

import numpy as np
import pytest

import treenodal as tn
from treenodal import eigensolve
from treenodal.errors import CertificationError, NoConvergence
from treenodal import _eigen_py

KERNELS = [pytest.param(_eigen_py, id="pure")]
try:
    from treenodal import _eigen_cy

    KERNELS.append(pytest.param(_eigen_cy, id="compiled"))
except ImportError:  # pragma: no cover - extension not built
    pass


def _random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((n, n))
    return (b + b.T) / 2.0


@pytest.mark.parametrize("kernel", KERNELS)
class TestKernel:
    def test_p3_oracle(self, kernel, p3):
        d, z, fail = kernel.symmetric_eigh(tn.assemble(p3).matrix)
        assert fail == -1
        assert np.allclose(sorted(d), [0.0, 1.0, 3.0], atol=1e-12)

    def test_one_by_one(self, kernel):
        d, z, fail = kernel.symmetric_eigh(np.array([[4.5]]))
        assert fail == -1
        assert d[0] == 4.5 and z[0, 0] == 1.0

    def test_rejects_nonsquare(self, kernel):
        with pytest.raises(ValueError):
            kernel.symmetric_eigh(np.zeros((2, 3)))

    @pytest.mark.parametrize("n", [2, 5, 17, 40])
    def test_random_matrix_reconstructs(self, kernel, n):
        a = _random_symmetric(n, seed=n)
        d, z, fail = kernel.symmetric_eigh(a)
        assert fail == -1
        scale = np.linalg.norm(a)
        assert np.linalg.norm(a @ z - z * d) <= 1e-13 * max(1.0, scale) * n
        assert np.linalg.norm(z.T @ z - np.eye(n)) <= 1e-13 * n

    def test_input_matrix_is_not_clobbered(self, kernel):
        a = _random_symmetric(6, seed=0)
        before = a.copy()
        kernel.symmetric_eigh(a)
        assert np.array_equal(a, before)


def test_kernels_agree():
    if len(KERNELS) < 2:
        pytest.skip("compiled kernel not built")
    a = _random_symmetric(30, seed=7)
    d_py, _, _ = _eigen_py.symmetric_eigh(a)
    d_cy, _, _ = _eigen_cy.symmetric_eigh(a)
    assert np.allclose(sorted(d_py), sorted(d_cy), atol=1e-11)


def test_backend_is_reported():
    assert eigensolve.BACKEND in ("compiled", "pure")


def test_pure_python_env_override():
    code = "import treenodal; print(treenodal.BACKEND)"
    env = dict(os.environ, TREENODAL_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "pure"


class TestDecompose:
    def test_p2(self, p2):
        spec = tn.decompose(tn.assemble(p2))
        assert np.allclose(spec.eigenvalues, [0.0, 2.0], atol=1e-14)
        s = 1.0 / np.sqrt(2.0)
        assert np.allclose(np.abs(spec.eigenvector(1)), [s, s], atol=1e-14)

    def test_p3_eigenvectors(self, p3):
        spec = tn.decompose(tn.assemble(p3))
        assert np.allclose(spec.eigenvalues, [0.0, 1.0, 3.0], atol=1e-12)
        for n, pattern in [(1, [1, 1, 1]), (2, [1, 0, -1]), (3, [1, -2, 1])]:
            v = spec.eigenvector(n)
            w = np.array(pattern, dtype=float)
            w /= np.linalg.norm(w)
            assert np.allclose(v, w, atol=1e-12) or np.allclose(v, -w, atol=1e-12)

    def test_star_spectrum(self, star5):
        spec = tn.decompose(tn.assemble(star5))
        assert np.allclose(spec.eigenvalues, [0.0, 1.0, 1.0, 1.0, 5.0], atol=1e-12)

    def test_eigenvalues_ascend_and_certificates_hold(self):
        t = tn.generate("random_pruefer", 12, weight_law="uniform:0.5:2", seed=19)
        op = tn.assemble(t, tn.random_potential(12, law="uniform:-1:1", seed=20))
        spec = tn.decompose(op)
        assert np.all(np.diff(spec.eigenvalues) >= 0)
        assert np.all(spec.residual_norms <= eigensolve.EPS_RES * spec.a_fro)
        assert spec.orthogonality_defect <= eigensolve.ORTHO_TOL

    def test_sign_normalization_largest_entry_positive(self):
        t = tn.generate("random_pruefer", 10, weight_law="uniform:0.5:2", seed=23)
        spec = tn.decompose(tn.assemble(t))
        for k in range(1, 11):
            v = spec.eigenvector(k)
            assert v[int(np.argmax(np.abs(v)))] > 0

    def test_sign_tie_breaks_on_first_index(self):
        # eigenvector of [[0,1],[1,0]] at -1 is (1,-1)/sqrt(2): |v| is tied,
        # so the first extremal entry decides the sign
        spec = tn.decompose(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert spec.eigenvector(1)[0] > 0

    def test_eigenvector_index_is_one_based(self, p2):
        spec = tn.decompose(tn.assemble(p2))
        with pytest.raises(IndexError):
            spec.eigenvector(0)
        with pytest.raises(IndexError):
            spec.eigenvector(3)

    def test_rejects_asymmetric_matrix(self):
        with pytest.raises(ValueError):
            tn.decompose(np.array([[1.0, 2.0], [2.0000001, 1.0]]))

    def test_no_convergence_carries_the_failing_index(self, p3):
        with pytest.raises(NoConvergence) as err:
            tn.decompose(tn.assemble(p3), max_sweeps=0)
        assert err.value.sweeps == 0
        assert 0 <= err.value.index < 3

    def test_spectrum_invariant_under_relabeling(self):
        t = tn.generate("random_pruefer", 11, weight_law="uniform:0.5:2", seed=31)
        perm = np.random.default_rng(32).permutation(11)
        relabeled = tn.validate_tree(
            11, [(int(perm[x]), int(perm[y]), c) for x, y, c in t.edges], root=int(perm[t.root])
        )
        a = tn.decompose(tn.assemble(t)).eigenvalues
        b = tn.decompose(tn.assemble(relabeled)).eigenvalues
        assert np.allclose(a, b, atol=1e-10)

    def test_json_dict_shape(self, p2):
        doc = tn.decompose(tn.assemble(p2)).to_json_dict()
        assert set(doc) == {"eigenvalues", "eigenvectors", "residuals"}
        assert len(doc["eigenvectors"]) == 2


class TestMultiplicityGroups:
    def test_star_groups(self, star5):
        spec = tn.decompose(tn.assemble(star5))
        rep = tn.multiplicity_groups(spec)
        assert rep.groups == ((1, 1), (2, 4), (5, 5))
        assert not rep.is_simple
        assert rep.group_of(3) == (2, 4)
        assert rep.sign_graph_bound(2) == 4

    def test_path_is_simple(self):
        spec = tn.decompose(tn.assemble(tn.generate("path", 6)))
        rep = tn.multiplicity_groups(spec)
        assert rep.is_simple
        assert rep.groups == tuple((k, k) for k in range(1, 7))
        assert rep.sign_graph_bound(4) == 4

    def test_perturbed_star_splits_the_cluster(self):
        t = tn.validate_tree(
            5, [(1, 0, 1.001), (0, 2, 0.997), (0, 3, 1.005), (0, 4, 0.993)], root=1
        )
        rep = tn.multiplicity_groups(tn.decompose(tn.assemble(t)))
        assert rep.is_simple

    def test_wide_tolerance_merges_everything(self, star5):
        spec = tn.decompose(tn.assemble(star5))
        rep = tn.multiplicity_groups(spec, tau_gap=100.0)
        assert rep.groups == ((1, 5),)

    def test_group_partition_covers_all_indices(self):
        t = tn.generate("caterpillar", 9, weight_law="uniform:0.5:2", seed=40)
        rep = tn.multiplicity_groups(tn.decompose(tn.assemble(t)))
        flat = [k for lo, hi in rep.groups for k in range(lo, hi + 1)]
        assert flat == list(range(1, 10))


def test_certification_error_is_exported():
    assert issubclass(CertificationError, tn.TreeNodalError)
