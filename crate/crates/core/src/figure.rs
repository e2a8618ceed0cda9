//! SVG drawings of `Adm(μ)` as a union of alcoves, for the rank-two groups
//! `GL_3` and `GSp_4`.

use std::fmt::Write as _;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::group::{Coweight, Family, GroupDatum};
use crate::scalar::Rational;
use crate::stratify::adm_set;

const UNIT_X: i64 = 30;
const UNIT_Y: i64 = 26;
const MARGIN: i64 = 20;

fn to_int(x: Rational) -> i64 {
    debug_assert!(x.is_integer());
    x.to_integer()
}

/// Plane coordinates of an apartment point in integer units.
///
/// `GL_3` uses the simple-root values `a = v₁ - v₂`, `b = v₂ - v₃` placed on
/// a triangular grid, so the alcoves are equilateral up to rounding of `√3`.
/// `GSp_4` uses `(2v₁ - c, 2v₂ - c)` with `c` the similitude value.
fn plane(d: &GroupDatum, v: &[Rational]) -> (i64, i64) {
    match d.group.family {
        Family::Gl => {
            let a = to_int(v[0] - v[1]);
            let b = to_int(v[1] - v[2]);
            ((2 * a + b) * UNIT_X / 2, -b * UNIT_Y)
        }
        Family::Gsp => {
            let c = v[0] + v[3];
            let two = Rational::from_integer(2);
            let x = to_int(two * v[0] - c);
            let y = to_int(two * v[1] - c);
            (x * UNIT_X, -y * UNIT_X)
        }
    }
}

fn check_rank_two(d: &GroupDatum) -> Result<()> {
    let ok = matches!((d.group.family, d.group.n), (Family::Gl, 3) | (Family::Gsp, 2));
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfBounds(format!(
            "rank-2 only: alcove figures are drawn for GL_3 and GSp_4, not {}",
            d.group
        )))
    }
}

/// Vertices of the alcove `x·A` in plane coordinates.
pub fn alcove_polygon(d: &GroupDatum, x: &AffineElt) -> Result<Vec<(i64, i64)>> {
    check_rank_two(d)?;
    Ok(d.base_alcove_vertices().iter().map(|v| plane(d, &x.act(v))).collect())
}

/// Deterministic SVG of the alcoves `x·A` for `x ∈ Adm(μ)`. Translation
/// elements are shaded, the base alcove carries the label `τ` and every
/// other alcove its length.
pub fn alcove_figure(d: &GroupDatum, mu: &Coweight) -> Result<String> {
    check_rank_two(d)?;
    let adm = adm_set(d, mu)?;
    let polys: Vec<(AffineElt, Vec<(i64, i64)>)> = adm
        .iter()
        .map(|x| Ok((x.clone(), alcove_polygon(d, x)?)))
        .collect::<Result<_>>()?;
    let xs = polys.iter().flat_map(|(_, p)| p.iter().map(|q| q.0));
    let ys = polys.iter().flat_map(|(_, p)| p.iter().map(|q| q.1));
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let (w, h) = (x1 - x0 + 2 * MARGIN, y1 - y0 + 2 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="{} {} {w} {h}">"#,
        x0 - MARGIN,
        y0 - MARGIN
    );
    let _ = writeln!(out, "<title>Adm{mu} for {}</title>", d.group);
    for (x, poly) in &polys {
        let pts: Vec<String> = poly.iter().map(|(a, b)| format!("{a},{b}")).collect();
        let (fill, class) = if x.is_translation() {
            ("#f4a582", "translation")
        } else if x.length() == 0 {
            ("#92c5de", "tau")
        } else {
            ("#eeeeee", "alcove")
        };
        let _ = writeln!(
            out,
            r##"<polygon class="{class}" points="{}" fill="{fill}" stroke="#333333" stroke-width="1"><title>{x}</title></polygon>"##,
            pts.join(" ")
        );
        let k = poly.len() as i64;
        let cx = poly.iter().map(|p| p.0).sum::<i64>() / k;
        let cy = poly.iter().map(|p| p.1).sum::<i64>() / k;
        let label = if x.length() == 0 { "τ".to_string() } else { x.length().to_string() };
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{cy}" font-size="9" text-anchor="middle" dominant-baseline="middle">{label}</text>"#
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
