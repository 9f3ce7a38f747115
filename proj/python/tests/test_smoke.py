import os
from pathlib import Path

import numpy as np
import pytest

import adaschwarz as asz

CONFIG_DIR = Path(os.environ.get("ADASCHWARZ_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_problem_shape():
    p = asz.make_problem(2, 3)
    assert p.dofs == 5**3
    assert p.num_tets == 6 * 6**3
    assert np.allclose(p.alpha, 1.0)
    u = np.ones(p.dofs)
    assert p.matvec(u).shape == (p.dofs,)


def test_coarse_and_solve():
    p = asz.make_problem(
        2, 4, inclusions=[{"box": [[0.1, 0.4], [0.2, 0.8], [0.1, 0.4]], "value": 1e4}]
    )
    for kind, interp in (("wirebasket", 19), ("vertex", 1)):
        c = asz.build_coarse(p, kind)
        assert c.interpolant_columns == interp
        assert c.columns.shape == (p.dofs, c.dim)
        col = c.columns[:, 0].toarray().ravel()
        e0 = np.zeros(c.dim)
        e0[0] = 1.0
        assert np.allclose(c.interpolation_coefficients(col), e0, atol=1e-10)
        M = asz.Preconditioner(p, c)
        assert M.num_subdomains == 8
        x, rep = asz.pcg_solve(p, M, rel_tol=1e-8)
        assert rep["converged"]
        assert rep["final_relative_residual"] <= 1e-8
        assert 1.0 <= rep["cond_estimate"] < 50
        assert np.linalg.norm(p.matvec(x) - p.rhs) <= 1e-8 * np.linalg.norm(p.rhs)


def test_alpha_array_and_one_level():
    p0 = asz.make_problem(2, 3)
    alpha = np.linspace(1.0, 100.0, p0.num_tets)
    p = asz.make_problem(2, 3, alpha=alpha)
    assert np.allclose(p.alpha, alpha)
    _, one = asz.pcg_solve(p, asz.Preconditioner(p), rel_tol=1e-8)
    _, two = asz.pcg_solve(p, asz.Preconditioner(p, asz.build_coarse(p)), rel_tol=1e-8)
    assert one["converged"] and two["converged"]
    with pytest.raises(ValueError):
        asz.make_problem(2, 3, alpha=np.ones(5))


def test_vertex_space_needs_interior_faces():
    with pytest.raises(ValueError):
        asz.build_coarse(asz.make_problem(2, 2), "vertex")


def test_run_config(tmp_path):
    cfg = tmp_path / "tiny.yaml"
    cfg.write_text(
        """
name: tiny
mesh: {subdomains_per_axis: 2, H_over_h: [3], no_enrichment_H_over_h: [3]}
distributions:
  - {name: flat, background: 1}
coarse_space: both
enrichment: both
outputs: {formats: [csv, txt]}
"""
    )
    recs = asz.run_config(str(cfg), out=str(tmp_path / "out"), write_tables=True)
    assert len(recs) == 4
    assert all(r["report"]["converged"] for r in recs)
    assert (tmp_path / "out" / "table_vertex.csv").exists()


def test_canned_config_parses():
    assert (CONFIG_DIR / "face_channel.yaml").exists()
