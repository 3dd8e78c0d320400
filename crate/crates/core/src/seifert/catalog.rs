//! Built-in Seifert matrices.
//!
//! Names: `unknot`, `trefoil` (= `3_1` = `T2_3`), `T2_q` for odd `q >= 3`,
//! `figure8` (= `4_1`), `stevedore` (= `6_1`), `metabolic` (an algebraically
//! slice genus-2 matrix with cyclic Alexander module), and twist knots
//! `twist_n` / `twist_mN` (`-N`).
//! Prefix `-` or `m_` for the mirror image.

use super::matrix::SeifertMatrix;
use crate::error::{Error, Result};

/// Standard `2g x 2g` Seifert matrix of the torus knot `T(2, 2g+1)`.
pub fn torus_2q(q: usize) -> SeifertMatrix {
    assert!(q >= 1 && q % 2 == 1, "T(2,q) needs odd q");
    let n = q - 1;
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = -1;
        if i + 1 < n {
            m[i][i + 1] = 1;
        }
    }
    let mut a = SeifertMatrix::new(m).expect("torus knot matrix is valid");
    a.name = Some(if q == 1 {
        "unknot".into()
    } else {
        format!("T2_{q}")
    });
    a
}

/// Twist knot with `n` full twists: `[[-1, 1], [0, n]]`.
pub fn twist(n: i64) -> SeifertMatrix {
    let mut a =
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, n]]).expect("twist knot matrix is valid");
    a.name = Some(if n < 0 {
        format!("twist_m{}", -n)
    } else {
        format!("twist_{n}")
    });
    a
}

/// Genus-2 Seifert matrix vanishing on the span of the first two basis
/// vectors (a metabolizer), with `Delta = (t^2 - t + 1)^2` and an Alexander
/// module that is cyclic over `Q` and every small `Z_p`. Used as the default
/// carrier of infection stages; sliceness itself is an assumption.
pub fn metabolic() -> SeifertMatrix {
    SeifertMatrix::named("metabolic", METABOLIC.iter().map(|r| r.to_vec()).collect())
        .expect("metabolic matrix is valid")
}

const METABOLIC: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [0, -1, -1, 0], [1, 1, 0, 0]];

/// Resolves a catalog name.
pub fn lookup(name: &str) -> Result<SeifertMatrix> {
    if let Some(rest) = name.strip_prefix('-').or_else(|| name.strip_prefix("m_")) {
        let mut m = lookup(rest)?.mirror();
        m.name = Some(format!("-{rest}"));
        return Ok(m);
    }
    let m = match name {
        "unknot" | "0_1" => SeifertMatrix::unknot(),
        "trefoil" | "3_1" => torus_2q(3),
        "figure8" | "figure_eight" | "4_1" => {
            SeifertMatrix::named("figure8", vec![vec![1, 1], vec![0, -1]])?
        }
        "stevedore" | "6_1" => SeifertMatrix::named("stevedore", vec![vec![-1, 1], vec![0, 2]])?,
        "metabolic" => metabolic(),
        "cinquefoil" | "5_1" => torus_2q(5),
        _ => {
            if let Some(q) = name.strip_prefix("T2_") {
                let q: usize = q.parse().map_err(|_| Error::UnknownAtom(name.into()))?;
                if q < 3 || q % 2 == 0 {
                    return Err(Error::UnknownAtom(name.into()));
                }
                torus_2q(q)
            } else if let Some(n) = name.strip_prefix("twist_m") {
                twist(
                    -n.parse::<i64>()
                        .map_err(|_| Error::UnknownAtom(name.into()))?,
                )
            } else if let Some(n) = name.strip_prefix("twist_") {
                twist(n.parse().map_err(|_| Error::UnknownAtom(name.into()))?)
            } else {
                return Err(Error::UnknownAtom(name.into()));
            }
        }
    };
    Ok(m)
}

/// Knots whose signature functions jump only at roots of unity.
pub fn integral_exact_catalog() -> Vec<SeifertMatrix> {
    let mut out = vec![SeifertMatrix::unknot()];
    out.extend([3, 5, 7, 9, 11].into_iter().map(torus_2q));
    out.push(lookup("figure8").unwrap());
    out.push(metabolic());
    out
}
