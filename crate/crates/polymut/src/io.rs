//! Structured-text (JSON) formats for every value that crosses a file
//! boundary.
//!
//! Rationals serialize as `"p/q"` strings (just `"p"` for integers) and are
//! never emitted in floating point; integer vectors serialize as plain JSON
//! integers. Maps are emitted with sorted keys and all geometry is already
//! canonical, so serialization is byte-deterministic.
//!
//! A polyhedron file is one of
//! `{ "space": "N"|"M", "dim": d, "vertices": [[rat,…],…], "rays": [[int,…],…] }`
//! or `{ "space", "dim", "inequalities": [{"normal": [int,…], "rhs": rat},…] }`;
//! a factor file is `{ "w": [int,…], "factor_vertices": [[int,…],…] }`;
//! a poset file is `{ "elements": ["p","q",…], "covers": [["p","q"],…] }`
//! where `["a","b"]` means `b` covers `a`.

use num::bigint::BigInt;
use num::ToPrimitive;
use serde_json::{json, Value};

use crate::ehrhart::CountSeries;
use crate::mutation::{Factor, FamilyPart, MutationCertificate};
use crate::polyhedron::{HalfSpace, Polyhedron};
use crate::poset::{Poset, TheoremReport};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::tropical::PlImage;
use crate::vector::{LatticeVector, QVector, Space};
use crate::Error;

fn parse_error(context: &str) -> Error {
    Error::Parse(context.to_string())
}

fn space_to_str(space: Space) -> &'static str {
    match space {
        Space::N => "N",
        Space::M => "M",
    }
}

fn space_from_value(value: &Value) -> Result<Space, Error> {
    match value.as_str() {
        Some("N") => Ok(Space::N),
        Some("M") => Ok(Space::M),
        _ => Err(parse_error("space must be \"N\" or \"M\"")),
    }
}

fn int_to_json(value: &BigInt) -> Result<Value, Error> {
    value
        .to_i64()
        .map(Value::from)
        .ok_or_else(|| parse_error("integer too large for the file format"))
}

fn int_from_json(value: &Value) -> Result<BigInt, Error> {
    if let Some(n) = value.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = value.as_str() {
        return s.parse().map_err(|_| parse_error("invalid integer string"));
    }
    Err(parse_error("expected an integer"))
}

fn rational_from_json(value: &Value) -> Result<Rational, Error> {
    if let Some(n) = value.as_i64() {
        return Ok(Rational::from_integer(n.into()));
    }
    if let Some(s) = value.as_str() {
        return parse_rational(s);
    }
    Err(parse_error("expected a rational as a \"p/q\" string"))
}

fn rational_vector_to_json(coords: &[Rational]) -> Value {
    Value::Array(
        coords
            .iter()
            .map(|c| Value::from(format_rational(c)))
            .collect(),
    )
}

fn int_vector_to_json(coords: &[BigInt]) -> Result<Value, Error> {
    Ok(Value::Array(
        coords.iter().map(int_to_json).collect::<Result<_, _>>()?,
    ))
}

fn array<'v>(value: &'v Value, context: &str) -> Result<&'v [Value], Error> {
    value
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| parse_error(context))
}

/// Parses a point of the given space from an array of rationals.
pub fn qvector_from_value(space: Space, value: &Value) -> Result<QVector, Error> {
    let coords = array(value, "expected an array of rationals")?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QVector::new(space, coords))
}

fn lattice_vector_from_value(space: Space, value: &Value) -> Result<LatticeVector, Error> {
    let coords = array(value, "expected an array of integers")?
        .iter()
        .map(int_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeVector::new(space, coords))
}

/// Canonical JSON form of a polyhedron: the vertex/ray description, or an
/// empty inequality list for the whole space.
pub fn polyhedron_to_value(poly: &Polyhedron) -> Result<Value, Error> {
    if poly.is_whole_space() {
        return Ok(json!({
            "space": space_to_str(poly.space()),
            "dim": poly.dim(),
            "inequalities": [],
        }));
    }
    let vertices: Vec<Value> = poly
        .vertices()
        .iter()
        .map(|v| rational_vector_to_json(v.coords()))
        .collect();
    let rays: Vec<Value> = poly
        .rays()
        .iter()
        .map(|r| int_vector_to_json(r.coords()))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "space": space_to_str(poly.space()),
        "dim": poly.dim(),
        "vertices": vertices,
        "rays": rays,
    }))
}

fn halfspace_to_value(hs: &HalfSpace) -> Result<Value, Error> {
    Ok(json!({
        "normal": int_vector_to_json(hs.normal().coords())?,
        "rhs": format_rational(hs.rhs()),
    }))
}

/// Reads a polyhedron from either of its two file forms.
pub fn polyhedron_from_value(value: &Value) -> Result<Polyhedron, Error> {
    let space = space_from_value(
        value
            .get("space")
            .ok_or_else(|| parse_error("missing \"space\""))?,
    )?;
    let dim = value
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_error("missing or invalid \"dim\""))? as usize;
    let has_vertices = value.get("vertices").is_some();
    let has_inequalities = value.get("inequalities").is_some();
    match (has_vertices, has_inequalities) {
        (true, false) => {
            let vertices = array(
                value.get("vertices").unwrap(),
                "\"vertices\" must be an array",
            )?
            .iter()
            .map(|v| qvector_from_value(space, v))
            .collect::<Result<Vec<_>, _>>()?;
            let rays = match value.get("rays") {
                None => vec![],
                Some(r) => array(r, "\"rays\" must be an array")?
                    .iter()
                    .map(|v| lattice_vector_from_value(space, v))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            Polyhedron::from_vrep(space, dim, vertices, rays)
        }
        (false, true) => {
            let halfspaces = array(
                value.get("inequalities").unwrap(),
                "\"inequalities\" must be an array",
            )?
            .iter()
            .map(|entry| {
                let normal = lattice_vector_from_value(
                    space.dual(),
                    entry
                        .get("normal")
                        .ok_or_else(|| parse_error("missing \"normal\""))?,
                )?;
                let rhs = rational_from_json(
                    entry
                        .get("rhs")
                        .ok_or_else(|| parse_error("missing \"rhs\""))?,
                )?;
                HalfSpace::new(normal, rhs)
            })
            .collect::<Result<Vec<_>, _>>()?;
            Polyhedron::from_hrep(space, dim, halfspaces)
        }
        (true, true) => Err(parse_error(
            "give either \"vertices\" or \"inequalities\", not both",
        )),
        (false, false) => Err(parse_error("missing \"vertices\" or \"inequalities\"")),
    }
}

/// `{ "w": [int,…], "factor_vertices": [[int,…],…] }`.
pub fn factor_to_value(factor: &Factor) -> Result<Value, Error> {
    let vertices: Vec<Value> = factor
        .polytope()
        .vertices()
        .iter()
        .map(|v| {
            let ints: Vec<BigInt> = v.coords().iter().map(|c| c.to_integer()).collect();
            int_vector_to_json(&ints)
        })
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "w": int_vector_to_json(factor.width_vector().coords())?,
        "factor_vertices": vertices,
    }))
}

pub fn factor_from_value(value: &Value) -> Result<Factor, Error> {
    let width = lattice_vector_from_value(
        Space::M,
        value.get("w").ok_or_else(|| parse_error("missing \"w\""))?,
    )?;
    let vertices = array(
        value
            .get("factor_vertices")
            .ok_or_else(|| parse_error("missing \"factor_vertices\""))?,
        "\"factor_vertices\" must be an array",
    )?
    .iter()
    .map(|v| qvector_from_value(Space::N, v))
    .collect::<Result<Vec<_>, _>>()?;
    let polytope = Polyhedron::from_vrep(Space::N, width.dim(), vertices, vec![])?;
    Factor::new(width, polytope)
}

/// `{ "elements": [..], "covers": [["a","b"],..] }` with `b` covering `a`.
pub fn poset_to_value(poset: &Poset) -> Value {
    let covers: Vec<Value> = poset
        .covers()
        .iter()
        .map(|&(i, j)| json!([poset.elements()[i], poset.elements()[j]]))
        .collect();
    json!({ "elements": poset.elements(), "covers": covers })
}

pub fn poset_from_value(value: &Value) -> Result<Poset, Error> {
    let elements = array(
        value
            .get("elements")
            .ok_or_else(|| parse_error("missing \"elements\""))?,
        "\"elements\" must be an array",
    )?
    .iter()
    .map(|e| {
        e.as_str()
            .map(String::from)
            .ok_or_else(|| parse_error("elements must be strings"))
    })
    .collect::<Result<Vec<_>, _>>()?;
    let covers = match value.get("covers") {
        None => vec![],
        Some(c) => array(c, "\"covers\" must be an array")?
            .iter()
            .map(|pair| {
                let pair = array(pair, "cover must be a two-element array")?;
                match pair {
                    [a, b] => Ok((
                        a.as_str()
                            .ok_or_else(|| parse_error("cover entries are strings"))?
                            .to_string(),
                        b.as_str()
                            .ok_or_else(|| parse_error("cover entries are strings"))?
                            .to_string(),
                    )),
                    _ => Err(parse_error("cover must be a two-element array")),
                }
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Poset::new(elements, &covers)
}

/// Full mutation audit: inputs, the witness family, verdict, and result.
pub fn certificate_to_value(cert: &MutationCertificate) -> Result<Value, Error> {
    let family: Vec<Value> = cert
        .family
        .entries
        .iter()
        .map(|entry| {
            Ok(json!({
                "height": format_rational(&entry.height),
                "part": match entry.part {
                    FamilyPart::Polytope => "polytope",
                    FamilyPart::Cone => "cone",
                },
                "witness": match &entry.witness {
                    Some(g) => polyhedron_to_value(g)?,
                    None => Value::Null,
                },
            }))
        })
        .collect::<Result<_, Error>>()?;
    Ok(json!({
        "input": polyhedron_to_value(&cert.input)?,
        "factor": factor_to_value(&cert.factor)?,
        "family": family,
        "defined": cert.defined,
        "failure_height": cert.failure_height.as_ref().map(format_rational),
        "result": match &cert.result {
            Some(p) => polyhedron_to_value(p)?,
            None => Value::Null,
        },
    }))
}

/// Piecewise-linear image audit: per-piece vertex data and the verdict.
pub fn pl_image_to_value(image: &PlImage) -> Result<Value, Error> {
    let pieces: Vec<Value> = image
        .pieces
        .iter()
        .map(|(chamber, piece)| {
            Ok(json!({
                "chamber_vertex": int_vector_to_json(chamber.vertex().coords())?,
                "region": chamber
                    .region()
                    .iter()
                    .map(halfspace_to_value)
                    .collect::<Result<Vec<_>, Error>>()?,
                "image": polyhedron_to_value(piece)?,
            }))
        })
        .collect::<Result<_, Error>>()?;
    Ok(json!({
        "factor": factor_to_value(&image.factor)?,
        "source": polyhedron_to_value(&image.source)?,
        "pieces": pieces,
        "hull": polyhedron_to_value(&image.hull)?,
        "piece_volume": format_rational(&image.piece_volume),
        "hull_volume": format_rational(&image.hull_volume),
        "convex": image.convex,
    }))
}

/// Step-by-step verification report, intermediate hulls included.
pub fn report_to_value(report: &TheoremReport) -> Result<Value, Error> {
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|step| {
            Ok(json!({
                "element": step.element,
                "factor": factor_to_value(&step.factor)?,
                "convex": step.convex,
                "vertex_images_are_01": step.vertex_images_are_01,
                "acts_as_single_coordinate_min": step.acts_as_single_coordinate_min,
                "image": polyhedron_to_value(&step.image)?,
            }))
        })
        .collect::<Result<_, Error>>()?;
    Ok(json!({
        "poset": poset_to_value(&report.poset),
        "order_polytope": polyhedron_to_value(&report.order_polytope)?,
        "chain_polytope": polyhedron_to_value(&report.chain_polytope)?,
        "steps": steps,
        "final_equals_chain": report.final_equals_chain,
        "composite_matches_transfer": report.composite_matches_transfer,
        "passed": report.passed,
        "failing_step": report.failing_step,
        "witness": report.witness,
    }))
}

pub fn count_series_to_value(series: &CountSeries) -> Value {
    json!({
        "label": series.label,
        "counts": series.counts.iter().map(|&(m, c)| json!([m, c])).collect::<Vec<_>>(),
    })
}
