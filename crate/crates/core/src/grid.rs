//! Uniform cell-centered grids on intervals/rectangles with homogeneous
//! Neumann ghost semantics, and the field calculus built on them.
//!
//! The discrete Laplacian uses mirror ghost cells (ghost value = adjacent
//! interior value), so the discrete normal derivative vanishes exactly on
//! every boundary face and summation by parts holds exactly:
//!
//! ```text
//!   Σ_cells g · Δ_h f · vol  =  - Σ_faces (∇f)_face (∇g)_face · vol
//! ```
//!
//! Gradients live on faces; boundary faces carry gradient (and flux) zero.
//! Quadrature is the midpoint rule, consistent with cell-centered unknowns.

use crate::error::{Error, Result};

/// A box domain: an interval in 1D, a rectangle in 2D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDomain {
    dim: usize,
    lengths: [f64; 2],
}

impl BoxDomain {
    pub fn interval(len: f64) -> Result<BoxDomain> {
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::InvalidParam {
                name: "length",
                value: len,
                constraint: "must be finite and > 0",
            });
        }
        Ok(BoxDomain {
            dim: 1,
            lengths: [len, 1.0],
        })
    }

    pub fn rectangle(lx: f64, ly: f64) -> Result<BoxDomain> {
        for (name, v) in [("length_x", lx), ("length_y", ly)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    value: v,
                    constraint: "must be finite and > 0",
                });
            }
        }
        Ok(BoxDomain {
            dim: 2,
            lengths: [lx, ly],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length(&self, axis: usize) -> f64 {
        self.lengths[axis]
    }

    pub fn volume(&self) -> f64 {
        match self.dim {
            1 => self.lengths[0],
            _ => self.lengths[0] * self.lengths[1],
        }
    }
}

/// Uniform cell-centered grid over a [`BoxDomain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    domain: BoxDomain,
    n: [usize; 2],
    h: [f64; 2],
}

impl Grid {
    pub fn new(domain: BoxDomain, cells: &[usize]) -> Result<Grid> {
        if cells.len() != domain.dim() {
            return Err(Error::domain(format!(
                "grid needs {} cell counts, got {}",
                domain.dim(),
                cells.len()
            )));
        }
        let mut n = [1usize; 2];
        let mut h = [1.0f64; 2];
        for (axis, &c) in cells.iter().enumerate() {
            if c < 4 {
                return Err(Error::InvalidParam {
                    name: "cells_per_axis",
                    value: c as f64,
                    constraint: "must be >= 4",
                });
            }
            n[axis] = c;
            h[axis] = domain.length(axis) / c as f64;
        }
        Ok(Grid { domain, n, h })
    }

    pub fn line(len: f64, cells: usize) -> Result<Grid> {
        Grid::new(BoxDomain::interval(len)?, &[cells])
    }

    pub fn rect(lx: f64, ly: f64, nx: usize, ny: usize) -> Result<Grid> {
        Grid::new(BoxDomain::rectangle(lx, ly)?, &[nx, ny])
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn n(&self, axis: usize) -> usize {
        self.n[axis]
    }

    pub fn h(&self, axis: usize) -> f64 {
        self.h[axis]
    }

    pub fn cells(&self) -> usize {
        self.n[0] * self.n[1]
    }

    /// Cell volume `h_x · h_y` (with `h_y = 1` in 1D).
    pub fn cell_volume(&self) -> f64 {
        self.h[0] * self.h[1]
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.n[0] + ix
    }

    /// Center coordinates of cell `(ix, iy)`.
    pub fn center(&self, ix: usize, iy: usize) -> [f64; 2] {
        [
            (ix as f64 + 0.5) * self.h[0],
            (iy as f64 + 0.5) * self.h[1],
        ]
    }
}

/// A real-valued cell array over a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: Grid) -> Field {
        Field {
            data: vec![0.0; grid.cells()],
            grid,
        }
    }

    pub fn constant(grid: Grid, c: f64) -> Field {
        Field {
            data: vec![c; grid.cells()],
            grid,
        }
    }

    /// Builds a field by evaluating `f` at cell centers.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64; 2]) -> f64) -> Field {
        let mut data = Vec::with_capacity(grid.cells());
        for iy in 0..grid.n(1) {
            for ix in 0..grid.n(0) {
                data.push(f(&grid.center(ix, iy)));
            }
        }
        Field { grid, data }
    }

    pub fn from_data(grid: Grid, data: Vec<f64>) -> Result<Field> {
        if data.len() != grid.cells() {
            return Err(Error::domain(format!(
                "field data length {} does not match grid with {} cells",
                data.len(),
                grid.cells()
            )));
        }
        Ok(Field { grid, data })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.data[self.grid.idx(ix, iy)]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Field {
        Field {
            grid: self.grid,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn zip_map(&self, other: &Field, f: impl Fn(f64, f64) -> f64) -> Field {
        debug_assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// `u^γ` with fast paths for the common integer exponents.
    pub fn powf(&self, gamma: f64) -> Field {
        if gamma == 1.0 {
            self.clone()
        } else if gamma == 2.0 {
            self.map(|x| x * x)
        } else {
            self.map(|x| x.powf(gamma))
        }
    }

    /// Mirror image along `axis`; useful for symmetry checks.
    pub fn reflect(&self, axis: usize) -> Field {
        let g = self.grid;
        let (n0, n1) = (g.n(0), g.n(1));
        let mut data = vec![0.0; self.data.len()];
        for iy in 0..n1 {
            for ix in 0..n0 {
                let (jx, jy) = match axis {
                    0 => (n0 - 1 - ix, iy),
                    _ => (ix, n1 - 1 - iy),
                };
                data[g.idx(ix, iy)] = self.data[g.idx(jx, jy)];
            }
        }
        Field { grid: g, data }
    }
}

/// Face-centered vector field: one value per face, per axis. Boundary faces
/// are stored explicitly (index 0 and n along the axis) and carry 0 for
/// gradients and fluxes.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceField {
    grid: Grid,
    comp: [Vec<f64>; 2],
}

impl FaceField {
    pub fn zeros(grid: Grid) -> FaceField {
        let n0 = grid.n(0);
        let n1 = grid.n(1);
        let c0 = vec![0.0; (n0 + 1) * n1];
        let c1 = if grid.dim() == 2 {
            vec![0.0; n0 * (n1 + 1)]
        } else {
            Vec::new()
        };
        FaceField {
            grid,
            comp: [c0, c1],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn axis(&self, a: usize) -> &[f64] {
        &self.comp[a]
    }

    pub fn axis_mut(&mut self, a: usize) -> &mut [f64] {
        &mut self.comp[a]
    }

    /// Index of the x-face left of cell `(ix, iy)` offset by `ixf` ∈ 0..=n0.
    #[inline]
    pub fn idx0(&self, ixf: usize, iy: usize) -> usize {
        iy * (self.grid.n(0) + 1) + ixf
    }

    /// Index of the y-face below row `iyf` ∈ 0..=n1 at column `ix`.
    #[inline]
    pub fn idx1(&self, ix: usize, iyf: usize) -> usize {
        iyf * self.grid.n(0) + ix
    }
}

/// Second-order mirror-ghost Laplacian. Constants map to zero exactly, the
/// operator is symmetric negative semidefinite, and its row sums telescope
/// to zero.
pub fn laplacian_neumann(f: &Field) -> Field {
    let g = *f.grid();
    let (n0, n1) = (g.n(0), g.n(1));
    let inv_h0 = 1.0 / (g.h(0) * g.h(0));
    let inv_h1 = 1.0 / (g.h(1) * g.h(1));
    let u = f.as_slice();
    let mut out = vec![0.0; u.len()];
    for iy in 0..n1 {
        for ix in 0..n0 {
            let c = u[g.idx(ix, iy)];
            let l = if ix == 0 { c } else { u[g.idx(ix - 1, iy)] };
            let r = if ix + 1 == n0 { c } else { u[g.idx(ix + 1, iy)] };
            let mut acc = ((l + r) - 2.0 * c) * inv_h0;
            if g.dim() == 2 {
                let d = if iy == 0 { c } else { u[g.idx(ix, iy - 1)] };
                let t = if iy + 1 == n1 { c } else { u[g.idx(ix, iy + 1)] };
                acc += ((d + t) - 2.0 * c) * inv_h1;
            }
            out[g.idx(ix, iy)] = acc;
        }
    }
    Field::from_data(g, out).expect("sized to grid")
}

/// Face-centered first differences `(f_{i+1} - f_i)/h`; boundary faces 0.
pub fn gradient_faces(f: &Field) -> FaceField {
    let g = *f.grid();
    let (n0, n1) = (g.n(0), g.n(1));
    let u = f.as_slice();
    let mut out = FaceField::zeros(g);
    let inv_h0 = 1.0 / g.h(0);
    for iy in 0..n1 {
        for ixf in 1..n0 {
            let d = (u[g.idx(ixf, iy)] - u[g.idx(ixf - 1, iy)]) * inv_h0;
            let k = out.idx0(ixf, iy);
            out.axis_mut(0)[k] = d;
        }
    }
    if g.dim() == 2 {
        let inv_h1 = 1.0 / g.h(1);
        for iyf in 1..n1 {
            for ix in 0..n0 {
                let d = (u[g.idx(ix, iyf)] - u[g.idx(ix, iyf - 1)]) * inv_h1;
                let k = out.idx1(ix, iyf);
                out.axis_mut(1)[k] = d;
            }
        }
    }
    out
}

/// Discrete divergence of a face field: `(F_{i+1/2} - F_{i-1/2})/h` summed
/// over axes.
pub fn divergence(flux: &FaceField) -> Field {
    let g = *flux.grid();
    let (n0, n1) = (g.n(0), g.n(1));
    let mut out = vec![0.0; g.cells()];
    let inv_h0 = 1.0 / g.h(0);
    let fx = flux.axis(0);
    for iy in 0..n1 {
        for ix in 0..n0 {
            out[g.idx(ix, iy)] =
                (fx[flux.idx0(ix + 1, iy)] - fx[flux.idx0(ix, iy)]) * inv_h0;
        }
    }
    if g.dim() == 2 {
        let inv_h1 = 1.0 / g.h(1);
        let fy = flux.axis(1);
        for iy in 0..n1 {
            for ix in 0..n0 {
                out[g.idx(ix, iy)] +=
                    (fy[flux.idx1(ix, iy + 1)] - fy[flux.idx1(ix, iy)]) * inv_h1;
            }
        }
    }
    Field::from_data(g, out).expect("sized to grid")
}

/// Midpoint-rule `L^p` norm; `p = ∞` gives the max norm.
pub fn lp_norm(f: &Field, p: f64) -> Result<f64> {
    if p == f64::INFINITY {
        return Ok(f.as_slice().iter().fold(0.0, |m, x| m.max(x.abs())));
    }
    if !(p >= 1.0) {
        return Err(Error::domain(format!("lp_norm requires p >= 1, got {p}")));
    }
    let vol = f.grid().cell_volume();
    let sum: f64 = if p == 1.0 {
        f.as_slice().iter().map(|x| x.abs()).sum()
    } else if p == 2.0 {
        f.as_slice().iter().map(|x| x * x).sum()
    } else {
        f.as_slice().iter().map(|x| x.abs().powf(p)).sum()
    };
    Ok((sum * vol).powf(1.0 / p))
}

/// `∫ f dx` by the midpoint rule.
pub fn mass(f: &Field) -> f64 {
    f.as_slice().iter().sum::<f64>() * f.grid().cell_volume()
}

/// `∫ g(f) dx` by the midpoint rule.
pub fn integrate(f: &Field, g: impl Fn(f64) -> f64) -> f64 {
    f.as_slice().iter().map(|&x| g(x)).sum::<f64>() * f.grid().cell_volume()
}

/// `Σ_faces w(face) · vol` over interior faces, with `w` built from the two
/// adjacent cell values and the face gradient values supplied per axis.
/// This is the quadrature matched to the summation-by-parts identity.
pub fn interior_face_integral(
    grid: &Grid,
    faces: &[&FaceField],
    mut w: impl FnMut(usize, [usize; 2], [usize; 2], &[f64]) -> f64,
) -> f64 {
    let vol = grid.cell_volume();
    let (n0, n1) = (grid.n(0), grid.n(1));
    let mut sum = 0.0;
    let mut vals = vec![0.0; faces.len()];
    for iy in 0..n1 {
        for ixf in 1..n0 {
            for (s, ff) in faces.iter().enumerate() {
                vals[s] = ff.axis(0)[ff.idx0(ixf, iy)];
            }
            sum += w(0, [ixf - 1, iy], [ixf, iy], &vals);
        }
    }
    if grid.dim() == 2 {
        for iyf in 1..n1 {
            for ix in 0..n0 {
                for (s, ff) in faces.iter().enumerate() {
                    vals[s] = ff.axis(1)[ff.idx1(ix, iyf)];
                }
                sum += w(1, [ix, iyf - 1], [ix, iyf], &vals);
            }
        }
    }
    sum * vol
}
