//! Field snapshot serialization.
//!
//! Format: a comment header `# grid nx[,ny] hx[,hy] t=<time>` followed by
//! the cell values row-major, one grid row per CSV line, 17 significant
//! digits (lossless for f64).

use crate::error::{Error, Result};
use crate::grid::{Field, Grid};

pub fn to_csv(field: &Field, t: f64) -> String {
    let g = field.grid();
    let mut out = String::new();
    if g.dim() == 1 {
        out.push_str(&format!("# grid {} {:.16e} t={:.16e}\n", g.n(0), g.h(0), t));
    } else {
        out.push_str(&format!(
            "# grid {},{} {:.16e},{:.16e} t={:.16e}\n",
            g.n(0),
            g.n(1),
            g.h(0),
            g.h(1),
            t
        ));
    }
    let data = field.as_slice();
    for iy in 0..g.n(1) {
        let row: Vec<String> = (0..g.n(0))
            .map(|ix| format!("{:.16e}", data[g.idx(ix, iy)]))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses a snapshot produced by [`to_csv`], returning the field and its
/// time stamp.
pub fn from_csv(text: &str) -> Result<(Field, f64)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::domain("empty snapshot"))?;
    let body = header
        .strip_prefix("# grid ")
        .ok_or_else(|| Error::domain("snapshot header must start with `# grid `"))?;
    let parts: Vec<&str> = body.split_whitespace().collect();
    if parts.len() != 3 || !parts[2].starts_with("t=") {
        return Err(Error::domain(format!("malformed snapshot header: {header}")));
    }
    let ns: Vec<usize> = parts[0]
        .split(',')
        .map(|s| s.parse().map_err(|_| Error::domain("bad cell count")))
        .collect::<Result<_>>()?;
    let hs: Vec<f64> = parts[1]
        .split(',')
        .map(|s| s.parse().map_err(|_| Error::domain("bad spacing")))
        .collect::<Result<_>>()?;
    if ns.len() != hs.len() || ns.is_empty() || ns.len() > 2 {
        return Err(Error::domain("snapshot header dimension mismatch"));
    }
    let t: f64 = parts[2][2..]
        .parse()
        .map_err(|_| Error::domain("bad time stamp"))?;
    let grid = if ns.len() == 1 {
        Grid::line(hs[0] * ns[0] as f64, ns[0])?
    } else {
        Grid::rect(hs[0] * ns[0] as f64, hs[1] * ns[1] as f64, ns[0], ns[1])?
    };
    let mut data = Vec::with_capacity(grid.cells());
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        for tok in line.split(',') {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad value `{tok}`")))?;
            data.push(v);
        }
    }
    let field = Field::from_data(grid, data)?;
    Ok((field, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn round_trip_bit_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for grid in [
            Grid::line(1.0, 8).unwrap(),
            Grid::rect(2.0, 1.0, 6, 4).unwrap(),
        ] {
            let f = Field::from_fn(grid, |_| rng.random_range(-10.0..10.0));
            let t = 3.25;
            let (g, t2) = from_csv(&to_csv(&f, t)).unwrap();
            assert_eq!(t2, t);
            assert_eq!(g.grid().dim(), grid.dim());
            for (a, b) in f.as_slice().iter().zip(g.as_slice()) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_csv("").is_err());
        assert!(from_csv("1,2,3\n").is_err());
        assert!(from_csv("# grid 8 x t=0\n1\n").is_err());
    }
}
