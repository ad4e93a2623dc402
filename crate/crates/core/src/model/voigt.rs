//! Compressed (Voigt) index mapping: 11→1, 22→2, 33→3, 23→4, 31→5, 12→6.
//!
//! Indices here are zero-based: tensor indices 0..3, Voigt indices 0..6.

/// Tensor index pair for each Voigt position.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (2, 0), (0, 1)];

/// Voigt position of the symmetric pair `(i, j)`.
pub fn voigt_index(i: usize, j: usize) -> usize {
    assert!(i < 3 && j < 3, "tensor index out of range");
    match (i.min(j), i.max(j)) {
        (a, b) if a == b => a,
        (1, 2) => 3,
        (0, 2) => 4,
        (0, 1) => 5,
        _ => unreachable!(),
    }
}

/// Tensor pair `(i, j)` for Voigt position `p`.
pub fn tensor_pair(p: usize) -> (usize, usize) {
    PAIRS[p]
}

/// Engineering strain vector S_p from a displacement gradient `grad_u[i][j] = u_{i,j}`.
///
/// Shear entries carry the factor two: S_4 = u_{2,3} + u_{3,2}, and so on.
pub fn strain(grad_u: &[[f64; 3]; 3]) -> [f64; 6] {
    let mut s = [0.0; 6];
    for (p, &(i, j)) in PAIRS.iter().enumerate() {
        s[p] = if i == j {
            grad_u[i][i]
        } else {
            grad_u[i][j] + grad_u[j][i]
        };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        for p in 0..6 {
            let (i, j) = tensor_pair(p);
            assert_eq!(voigt_index(i, j), p);
            assert_eq!(voigt_index(j, i), p);
        }
    }

    #[test]
    fn table_matches_convention() {
        assert_eq!(voigt_index(0, 0), 0);
        assert_eq!(voigt_index(1, 1), 1);
        assert_eq!(voigt_index(2, 2), 2);
        assert_eq!(voigt_index(2, 1), 3);
        assert_eq!(voigt_index(0, 2), 4);
        assert_eq!(voigt_index(1, 0), 5);
    }

    #[test]
    fn shear_strain_is_engineering() {
        let mut g = [[0.0; 3]; 3];
        g[0][2] = 1.0;
        g[2][0] = 2.0;
        let s = strain(&g);
        assert_eq!(s, [0.0, 0.0, 0.0, 0.0, 3.0, 0.0]);
    }
}
