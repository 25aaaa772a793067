use std::sync::Arc;

use crate::{Error, Result};

/// A spatial point. For `n = 2` the third component is unused and kept at zero;
/// the normal coordinate is always `x[n-1]`.
pub type Point = [f64; 3];

/// Classification of a lattice node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    /// Strictly inside the box, off the thin plane.
    Interior,
    /// On the thin plane `{x_n = 0}` but not on the outer boundary.
    Thin,
    /// On a Dirichlet face of the box (tangential sides or the top `x_n = R`).
    OuterBoundary,
}

/// Uniform Cartesian lattice on `[-R, R]^{n-1} x [0, R]`.
///
/// Tangential axes carry `resolution` nodes with spacing `h = 2R/(resolution-1)`,
/// so `x = 0` is a node and the thin plane `{x_n = 0}` is exactly a lattice
/// plane. The normal axis carries `(resolution+1)/2` nodes on `[0, R]`.
#[derive(Debug)]
pub struct Grid {
    n: usize,
    resolution: usize,
    half_width: f64,
    h: f64,
    dims: [usize; 3],
    strides: [usize; 3],
    classes: Vec<NodeClass>,
}

impl Grid {
    pub fn new(n: usize, resolution: usize, half_width: f64) -> Result<Arc<Grid>> {
        if n != 2 && n != 3 {
            return Err(Error::UnsupportedDimension(n));
        }
        if resolution % 2 == 0 {
            return Err(Error::EvenResolution(resolution));
        }
        if resolution < 17 {
            return Err(Error::ResolutionTooSmall(resolution));
        }
        if !(half_width > 0.0) {
            return Err(Error::NonPositiveHalfWidth(half_width));
        }
        let h = 2.0 * half_width / (resolution - 1) as f64;
        let normal_len = (resolution + 1) / 2;
        let mut dims = [1usize; 3];
        for d in dims.iter_mut().take(n - 1) {
            *d = resolution;
        }
        dims[n - 1] = normal_len;
        let strides = [1, dims[0], dims[0] * dims[1]];
        let count = dims[0] * dims[1] * dims[2];

        let mut classes = vec![NodeClass::Interior; count];
        let mut idx = [0usize; 3];
        for flat in 0..count {
            let mut rem = flat;
            for a in 0..3 {
                idx[a] = rem % dims[a];
                rem /= dims[a];
            }
            let mut outer = idx[n - 1] == dims[n - 1] - 1;
            for a in 0..n - 1 {
                outer |= idx[a] == 0 || idx[a] == dims[a] - 1;
            }
            classes[flat] = if outer {
                NodeClass::OuterBoundary
            } else if idx[n - 1] == 0 {
                NodeClass::Thin
            } else {
                NodeClass::Interior
            };
        }

        Ok(Arc::new(Grid {
            n,
            resolution,
            half_width,
            h,
            dims,
            strides,
            classes,
        }))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn strides(&self) -> [usize; 3] {
        self.strides
    }

    pub fn node_count(&self) -> usize {
        self.classes.len()
    }

    /// Axis origin: `-R` on tangential axes, `0` on the normal axis.
    pub fn origin(&self, axis: usize) -> f64 {
        if axis == self.n - 1 {
            0.0
        } else {
            -self.half_width
        }
    }

    pub fn class(&self, flat: usize) -> NodeClass {
        self.classes[flat]
    }

    pub fn classes(&self) -> &[NodeClass] {
        &self.classes
    }

    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        idx[0] + idx[1] * self.strides[1] + idx[2] * self.strides[2]
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let mut rem = flat;
        let mut idx = [0usize; 3];
        for a in 0..3 {
            idx[a] = rem % self.dims[a];
            rem /= self.dims[a];
        }
        idx
    }

    pub fn coords(&self, flat: usize) -> Point {
        let idx = self.multi_index(flat);
        let mut x = [0.0; 3];
        for a in 0..self.n {
            x[a] = self.origin(a) + idx[a] as f64 * self.h;
        }
        x
    }

    /// Flat indices of all thin-plane nodes (including boundary corners of the
    /// thin plane, classified as outer boundary; filter with [`Grid::class`]).
    pub fn thin_plane_nodes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut idx = [0usize; 3];
        loop {
            out.push(self.flat_index(idx));
            // advance over tangential axes only; normal index stays 0
            let mut a = 0;
            loop {
                if a == self.n - 1 {
                    return out;
                }
                idx[a] += 1;
                if idx[a] < self.dims[a] {
                    break;
                }
                idx[a] = 0;
                a += 1;
            }
        }
    }

    /// True if the even-reflected ball `B_r(center)` is contained in the domain.
    pub fn contains_ball(&self, center: Point, r: f64) -> bool {
        if r < 0.0 {
            return false;
        }
        for a in 0..self.n - 1 {
            if center[a].abs() + r > self.half_width + 1e-12 {
                return false;
            }
        }
        // reflection handles x_n < 0
        center[self.n - 1].abs() + r <= self.half_width + 1e-12
    }
}
