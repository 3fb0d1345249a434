//! Minimal 3x3 real matrix used for Jacobians and tangent frames.

use core::ops::{Index, IndexMut, Mul};

/// Row-major 3x3 matrix
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    /// All-zero matrix
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    /// Identity matrix
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    /// Builds a matrix from its columns.
    pub fn from_columns(cols: [[f64; 3]; 3]) -> Self {
        let mut m = Mat3::ZERO;
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.0[i][j] = v;
            }
        }
        m
    }

    /// Column `j` as an array.
    pub fn column(&self, j: usize) -> [f64; 3] {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    /// Transpose
    pub fn transpose(&self) -> Self {
        let a = &self.0;
        Mat3([[a[0][0], a[1][0], a[2][0]], [a[0][1], a[1][1], a[2][1]], [a[0][2], a[1][2], a[2][2]]])
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        let a = &self.0;
        [
            a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
            a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
            a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
        ]
    }

    /// Trace
    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Sum of the three principal 2x2 minors.
    pub fn principal_minor_sum(&self) -> f64 {
        let a = &self.0;
        (a[0][0] * a[1][1] - a[0][1] * a[1][0])
            + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
            + (a[1][1] * a[2][2] - a[1][2] * a[2][1])
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Coefficients `(c2, c1, c0)` of the monic characteristic polynomial
    /// `l^3 + c2 l^2 + c1 l + c0`.
    pub fn char_poly(&self) -> [f64; 3] {
        [-self.trace(), self.principal_minor_sum(), -self.det()]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flat_map(|r| r.iter()).fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.0.iter().flat_map(|r| r.iter()).all(|v| v.is_finite())
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_char_poly_of_triangular() {
        let m = Mat3([[2.0, 1.0, 4.0], [0.0, 3.0, -1.0], [0.0, 0.0, 5.0]]);
        assert_eq!(m.det(), 30.0);
        // (l-2)(l-3)(l-5) = l^3 - 10 l^2 + 31 l - 30
        assert_eq!(m.char_poly(), [-10.0, 31.0, -30.0]);
    }

    #[test]
    fn product_with_identity() {
        let m = Mat3([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 10.0]]);
        assert_eq!(m * Mat3::IDENTITY, m);
        assert_eq!(Mat3::from_columns([m.column(0), m.column(1), m.column(2)]), m);
        assert_eq!(m.transpose().transpose(), m);
    }
}
