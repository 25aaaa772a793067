use std::sync::Arc;

use super::grid::{Grid, Point};
use crate::{Error, Result};

/// A scalar field on the half-domain with even-reflection semantics.
///
/// Implementors must satisfy `value((x', -x_n)) == value((x', x_n))` exactly;
/// both provided implementations reflect the normal coordinate before
/// evaluating, so the identity holds bit-for-bit.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: Point) -> f64;

    /// Gradient of the field. The default is a central difference; grid-backed
    /// fields override it with the exact gradient of their interpolant.
    fn gradient(&self, x: Point) -> Point {
        let n = self.dim();
        let step = 1e-6;
        let mut g = [0.0; 3];
        for a in 0..n {
            let mut xp = x;
            let mut xm = x;
            xp[a] += step;
            xm[a] -= step;
            g[a] = (self.value(xp) - self.value(xm)) / (2.0 * step);
        }
        g
    }

    /// Smallest radius at which sphere/ball functionals of this field are
    /// meaningful. Grid fields return `4h`; analytic fields have no floor.
    fn resolution_floor(&self) -> f64 {
        0.0
    }

    /// True if the (reflected) ball `B_r(center)` can be evaluated. Analytic
    /// fields are global.
    fn supports_ball(&self, _center: Point, _r: f64) -> bool {
        true
    }
}

/// Field sampled on a lattice, evaluated by multilinear interpolation of the
/// even-reflected node values.
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(grid: Arc<Grid>) -> GridFunction {
        let count = grid.node_count();
        GridFunction {
            grid,
            values: vec![0.0; count],
        }
    }

    /// Sample `f` at every node.
    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(Point) -> f64) -> GridFunction {
        let values: Vec<f64> = (0..grid.node_count()).map(|i| f(grid.coords(i))).collect();
        GridFunction { grid, values }
    }

    /// Sample another field at every node (exact node-wise restriction).
    pub fn from_field(grid: Arc<Grid>, f: &dyn ScalarField) -> GridFunction {
        Self::from_fn(grid, |x| f.value(x))
    }

    pub fn from_values(grid: Arc<Grid>, values: Vec<f64>) -> Result<GridFunction> {
        if values.len() != grid.node_count() {
            return Err(Error::GridMismatch);
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteField);
        }
        Ok(GridFunction { grid, values })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Node-wise difference `self - other` on the same grid.
    pub fn node_difference(&self, other: &GridFunction) -> Result<GridFunction> {
        if !Arc::ptr_eq(&self.grid, &other.grid) && self.grid.dims() != other.grid.dims() {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GridFunction {
            grid: self.grid.clone(),
            values,
        })
    }

    /// Node-wise difference `self - f` for an arbitrary field.
    pub fn subtract_field(&self, f: &dyn ScalarField) -> GridFunction {
        let values = (0..self.grid.node_count())
            .map(|i| self.values[i] - f.value(self.grid.coords(i)))
            .collect();
        GridFunction {
            grid: self.grid.clone(),
            values,
        }
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.values {
            *v *= c;
        }
    }

    /// Locate the cell containing the reflected point and the barycentric
    /// offsets within it; coordinates are clamped to the closed domain.
    fn locate(&self, x: Point) -> ([usize; 3], [f64; 3]) {
        let g = &self.grid;
        let n = g.dim();
        let dims = g.dims();
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for a in 0..n {
            let mut s = (x[a] - g.origin(a)) / g.spacing();
            if a == n - 1 {
                s = s.abs(); // even reflection across the thin plane
            }
            let mut cell = s.floor();
            if cell < 0.0 {
                cell = 0.0;
            }
            let mut ci = cell as usize;
            if ci + 1 >= dims[a] {
                ci = dims[a] - 2;
            }
            base[a] = ci;
            frac[a] = (s - ci as f64).clamp(0.0, 1.0);
        }
        (base, frac)
    }
}

impl ScalarField for GridFunction {
    fn dim(&self) -> usize {
        self.grid.dim()
    }

    fn value(&self, x: Point) -> f64 {
        let n = self.grid.dim();
        let (base, frac) = self.locate(x);
        let strides = self.grid.strides();
        let corners = 1usize << n;
        let mut acc = 0.0;
        for c in 0..corners {
            let mut flat = 0;
            let mut w = 1.0;
            for a in 0..n {
                let bit = (c >> a) & 1;
                flat += (base[a] + bit) * strides[a];
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            }
            acc += w * self.values[flat];
        }
        acc
    }

    /// Exact gradient of the multilinear interpolant (cell-wise finite
    /// differences blended across the remaining axes). The normal component
    /// is reflected for `x_n < 0`.
    fn gradient(&self, x: Point) -> Point {
        let n = self.grid.dim();
        let h = self.grid.spacing();
        let (base, frac) = self.locate(x);
        let strides = self.grid.strides();
        let corners = 1usize << n;
        let mut grad = [0.0; 3];
        for axis in 0..n {
            let mut acc = 0.0;
            for c in 0..corners {
                let mut flat = 0;
                let mut w = 1.0;
                for a in 0..n {
                    let bit = (c >> a) & 1;
                    flat += (base[a] + bit) * strides[a];
                    if a == axis {
                        w *= if bit == 1 { 1.0 } else { -1.0 };
                    } else {
                        w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
                    }
                }
                acc += w * self.values[flat];
            }
            grad[axis] = acc / h;
        }
        if x[n - 1] < 0.0 {
            grad[n - 1] = -grad[n - 1];
        }
        grad
    }

    fn resolution_floor(&self) -> f64 {
        4.0 * self.grid.spacing()
    }

    fn supports_ball(&self, center: Point, r: f64) -> bool {
        self.grid.contains_ball(center, r)
    }
}

/// Field defined by a closure of the reflected point: the constructor wraps
/// the normal coordinate in `|.|` so evenness is guaranteed.
pub struct AnalyticField<F: Fn(Point) -> f64 + Sync> {
    n: usize,
    f: F,
}

impl<F: Fn(Point) -> f64 + Sync> AnalyticField<F> {
    pub fn new(n: usize, f: F) -> AnalyticField<F> {
        AnalyticField { n, f }
    }
}

impl<F: Fn(Point) -> f64 + Sync> ScalarField for AnalyticField<F> {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: Point) -> f64 {
        let mut y = x;
        y[self.n - 1] = y[self.n - 1].abs();
        (self.f)(y)
    }

    fn gradient(&self, x: Point) -> Point {
        let n = self.n;
        let step = 1e-6;
        let mut g = [0.0; 3];
        for a in 0..n {
            let mut xp = x;
            let mut xm = x;
            xp[a] += step;
            xm[a] -= step;
            g[a] = (self.value(xp) - self.value(xm)) / (2.0 * step);
        }
        g
    }
}

/// Difference of two fields, `a - b`.
pub struct FieldDifference<'a> {
    pub a: &'a dyn ScalarField,
    pub b: &'a dyn ScalarField,
}

impl ScalarField for FieldDifference<'_> {
    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn value(&self, x: Point) -> f64 {
        self.a.value(x) - self.b.value(x)
    }

    fn gradient(&self, x: Point) -> Point {
        let ga = self.a.gradient(x);
        let gb = self.b.gradient(x);
        [ga[0] - gb[0], ga[1] - gb[1], ga[2] - gb[2]]
    }

    fn resolution_floor(&self) -> f64 {
        self.a.resolution_floor().max(self.b.resolution_floor())
    }

    fn supports_ball(&self, center: Point, r: f64) -> bool {
        self.a.supports_ball(center, r) && self.b.supports_ball(center, r)
    }
}

/// Weighted sum of fields.
pub struct LinearCombination<'a> {
    pub terms: Vec<(f64, &'a dyn ScalarField)>,
}

impl ScalarField for LinearCombination<'_> {
    fn dim(&self) -> usize {
        self.terms[0].1.dim()
    }

    fn value(&self, x: Point) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.value(x)).sum()
    }

    fn gradient(&self, x: Point) -> Point {
        let mut g = [0.0; 3];
        for (c, f) in &self.terms {
            let gf = f.gradient(x);
            for a in 0..3 {
                g[a] += c * gf[a];
            }
        }
        g
    }

    fn resolution_floor(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, f)| f.resolution_floor())
            .fold(0.0, f64::max)
    }

    fn supports_ball(&self, center: Point, r: f64) -> bool {
        self.terms.iter().all(|(_, f)| f.supports_ball(center, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_is_exact() {
        let grid = Grid::new(2, 33, 2.0).unwrap();
        let f = GridFunction::from_fn(grid, |x| x[0] + 0.3 * x[1] * x[1]);
        for &(x, y) in &[(0.13, 0.7), (-1.2, 0.05), (0.0, 1.31)] {
            let up = f.value([x, y, 0.0]);
            let down = f.value([x, -y, 0.0]);
            assert_eq!(up.to_bits(), down.to_bits());
        }
    }

    #[test]
    fn multilinear_reproduces_affine_fields() {
        let grid = Grid::new(2, 33, 2.0).unwrap();
        let f = GridFunction::from_fn(grid, |x| 1.0 + 2.0 * x[0] + 3.0 * x[1]);
        let v = f.value([0.131, 0.779, 0.0]);
        assert!((v - (1.0 + 2.0 * 0.131 + 3.0 * 0.779)).abs() < 1e-12);
        let g = f.gradient([0.131, 0.779, 0.0]);
        assert!((g[0] - 2.0).abs() < 1e-12);
        assert!((g[1] - 3.0).abs() < 1e-12);
        // reflected gradient flips the normal component
        let g = f.gradient([0.131, -0.779, 0.0]);
        assert!((g[1] + 3.0).abs() < 1e-12);
    }

    #[test]
    fn analytic_field_is_even() {
        let f = AnalyticField::new(2, |x| x[0] * x[0] - x[1]);
        assert_eq!(
            f.value([0.4, 0.9, 0.0]).to_bits(),
            f.value([0.4, -0.9, 0.0]).to_bits()
        );
    }
}
