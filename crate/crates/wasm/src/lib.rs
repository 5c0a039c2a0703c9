//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function has a plain Rust counterpart returning
//! `Result<String, String>`, which is what the native tests exercise.

use std::sync::OnceLock;

use klcells::cells::{cells_of, CellKind};
use klcells::g2::{emit_svg, predicted_partition, Classifier, RegionMap, SvgStyle};
use klcells::klbasis::KlData;
use klcells::{Ball, CoxeterSystem};
use wasm_bindgen::prelude::*;

/// Largest radius the page may ask for; ball(24) takes a few seconds in a browser.
pub const MAX_RADIUS: usize = 24;

fn classifier() -> Result<&'static Classifier, String> {
    static C: OnceLock<Result<Classifier, String>> = OnceLock::new();
    C.get_or_init(|| Classifier::new().map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

fn g2_system(weights: &str) -> Result<CoxeterSystem, String> {
    let w: Vec<i32> = weights
        .split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| format!("bad weight {t:?}")))
        .collect::<Result<_, _>>()?;
    if w.len() != 3 {
        return Err(format!("expected three weights, got {}", w.len()));
    }
    let names = vec!["s1".to_string(), "s2".to_string(), "s3".to_string()];
    CoxeterSystem::new(names, vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]], w).map_err(|e| e.to_string())
}

fn letters(word: &str) -> usize {
    word.split(['.', ' ', '*', ',']).filter(|t| !t.is_empty() && *t != "e").count()
}

/// SVG of the alcoves in a ball, colored by computed left cell or by region.
pub fn cells_svg(weights: &str, radius: usize, source: &str) -> Result<String, String> {
    if radius > MAX_RADIUS {
        return Err(format!("radius is limited to {MAX_RADIUS}"));
    }
    let ball = Ball::new(g2_system(weights)?, radius).map_err(|e| e.to_string())?;
    let c = classifier()?;
    let partition = match source {
        "predicted" => predicted_partition(c, &ball, radius).map_err(|e| e.to_string())?,
        "computed" => cells_of(&KlData::new(ball.clone()).map_err(|e| e.to_string())?, CellKind::Left),
        other => return Err(format!("unknown source {other:?}")),
    };
    let map = RegionMap::new(c, &ball).map_err(|e| e.to_string())?;
    let labels: Vec<String> = partition.cells.iter().map(|cell| map.region(cell.elements[0]).to_string()).collect();
    emit_svg(&ball, &partition, Some(&labels), &SvgStyle::default()).map_err(|e| e.to_string())
}

/// `P_{y,w}` as text, e.g. `v^-1`.
pub fn kl_poly(weights: &str, y: &str, w: &str) -> Result<String, String> {
    let radius = letters(w).max(letters(y));
    let kl = KlData::new(Ball::new(g2_system(weights)?, radius).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let ball = kl.ball();
    let (y, w) = (ball.parse(y).map_err(|e| e.to_string())?, ball.parse(w).map_err(|e| e.to_string())?);
    Ok(kl.kl_p(y, w).to_string())
}

/// Region of the alcove of an element together with its reduced form.
pub fn region_of(word: &str) -> Result<String, String> {
    let ball = Ball::new(g2_system("1,1,1")?, letters(word)).map_err(|e| e.to_string())?;
    let w = ball.parse(word).map_err(|e| e.to_string())?;
    let map = RegionMap::new(classifier()?, &ball).map_err(|e| e.to_string())?;
    Ok(format!("{} ({}, length {})", map.region(w), ball.word_string(w), ball.length(w)))
}

#[wasm_bindgen]
pub fn render_cells(weights: &str, radius: u32, source: &str) -> Result<String, JsError> {
    cells_svg(weights, radius as usize, source).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn kl_polynomial(weights: &str, y: &str, w: &str) -> Result<String, JsError> {
    kl_poly(weights, y, w).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(word: &str) -> Result<String, JsError> {
    region_of(word).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_has_one_polygon_per_element() {
        let svg = cells_svg("5,1,1", 6, "computed").unwrap();
        let ball = Ball::new(g2_system("5,1,1").unwrap(), 6).unwrap();
        assert_eq!(svg.matches("<polygon").count(), ball.len());
        assert!(svg.contains("data-label=\"F\""));
        assert_eq!(svg, cells_svg("5,1,1", 6, "computed").unwrap());
        assert!(cells_svg("5,1,1", 6, "guess").is_err());
        assert!(cells_svg("5,1,1", 99, "computed").is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(kl_poly("5,1,1", "e", "s2").unwrap(), "v^-1");
        assert_eq!(kl_poly("5,1,1", "s1.s2.s1.s2.s3", "s1.s3.s2.s1.s2.s3").unwrap(), "v^-1");
        assert_eq!(kl_poly("9,2,2", "s1.s2.s1.s2.s3", "s1.s3.s2.s1.s2.s3").unwrap(), "v^-2");
        assert!(kl_poly("5,1", "e", "s1").is_err());
        assert!(kl_poly("5,1,2", "e", "s1").is_err());
    }

    #[test]
    fn regions() {
        assert!(region_of("e").unwrap().starts_with("e "));
        assert!(region_of("s2.s3.s2").unwrap().starts_with("F "));
        assert!(region_of("s3.s2.s3").unwrap().starts_with("F "));
        assert!(region_of("s1.s3.s2.s1.s2.s3").unwrap().starts_with("B3 "));
        assert!(region_of("s4").is_err());
    }
}
