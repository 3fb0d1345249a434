//! Number formatting, CSV helpers and the graymap raster format.
//!
//! Raster cells are one byte each:
//!
//! | code      | fate                                        |
//! |-----------|---------------------------------------------|
//! | 0         | cell centre outside the simplex             |
//! | 1..=250   | escaped at that step (250 means >= 250)     |
//! | 251..=254 | converged to P1..P4                         |
//! | 255       | undetermined                                |
//!
//! Rows are written top to bottom from the largest second coordinate down.

use std::io::{self, Write};

use trichain_core::escape::EscapeRaster;
use trichain_core::Fate;

/// Shortest round-trip decimal; exponent form for very small or large
/// magnitudes.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Byte code of a fate.
pub fn fate_code(f: Fate) -> u8 {
    match f {
        Fate::Escaped(k) => k.min(250) as u8,
        Fate::ConvergedP1 => 251,
        Fate::ConvergedP2 => 252,
        Fate::ConvergedP3 => 253,
        Fate::ConvergedP4 => 254,
        Fate::Undetermined => 255,
    }
}

/// Binary graymap (`P5`) with the given comment lines in the header.
pub fn write_pgm<W: Write>(w: &mut W, raster: &EscapeRaster, comments: &str) -> io::Result<()> {
    let (nu, nv) = (raster.spec.nu, raster.spec.nv);
    writeln!(w, "P5")?;
    for line in comments.lines() {
        writeln!(w, "{line}")?;
    }
    writeln!(w, "{nu} {nv}")?;
    writeln!(w, "255")?;
    let mut row = Vec::with_capacity(nu);
    for j in (0..nv).rev() {
        row.clear();
        row.extend((0..nu).map(|i| fate_code(raster.get(i, j))));
        w.write_all(&row)?;
    }
    Ok(())
}

/// CSV legend of the byte codes.
pub fn write_legend<W: Write>(w: &mut W, header: &str) -> io::Result<()> {
    w.write_all(header.as_bytes())?;
    writeln!(w, "code,fate")?;
    writeln!(w, "0,outside")?;
    for k in 1..250 {
        writeln!(w, "{k},escaped-{k}")?;
    }
    writeln!(w, "250,escaped-250-or-later")?;
    for (i, name) in ["converged-P1", "converged-P2", "converged-P3", "converged-P4", "undetermined"].iter().enumerate()
    {
        writeln!(w, "{},{name}", 251 + i)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use trichain_core::escape::{Axis, Bounds, Plane, RasterSpec};

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, 1.0, 0.1, 2.1, -0.0451, 1e-7, 3.5e20, 1.0 / 3.0, f64::NEG_INFINITY] {
            let s = num(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1e-7), "1e-7");
    }

    #[test]
    fn codes() {
        assert_eq!(fate_code(Fate::Escaped(0)), 0);
        assert_eq!(fate_code(Fate::Escaped(1)), 1);
        assert_eq!(fate_code(Fate::Escaped(900)), 250);
        assert_eq!(fate_code(Fate::ConvergedP4), 254);
        assert_eq!(fate_code(Fate::Undetermined), 255);
    }

    #[test]
    fn pgm_layout() {
        let spec = RasterSpec::new(Plane { axis: Axis::Z, offset: 0.0 }, Bounds { u: (0.0, 1.0), v: (0.0, 1.0) }, 2, 2)
            .unwrap();
        let r = EscapeRaster {
            spec,
            cells: vec![Fate::Escaped(1), Fate::Escaped(2), Fate::ConvergedP1, Fate::Undetermined],
        };
        let mut buf = Vec::new();
        write_pgm(&mut buf, &r, "#! command=raster\n").unwrap();
        let head = b"P5\n#! command=raster\n2 2\n255\n";
        assert_eq!(&buf[..head.len()], head);
        assert_eq!(&buf[head.len()..], [251, 255, 1, 2]);
    }
}
