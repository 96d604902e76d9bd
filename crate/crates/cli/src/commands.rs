//! One function per subcommand.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use scarflab::bounds::{
    beta_bound, betti_vector, bound_table, is_log_concave, is_unimodal, l_bound, pd_bound, taylor_bound,
};
use scarflab::complex::f_vector_of_closure;
use scarflab::ideal::{extremal_power, is_scarf_face_by_labels};
use scarflab::lattice::{enumerate_points, Face, Point, PointIndex};
use scarflab::morse::{verify_full, verify_sampled, MorseContext};
use scarflab::r3::{f_vector_enumerated, facets_r3, is_face_r3};
use scarflab::scarfgeo::{find_witness, u_complex_facets};

use crate::output::{face_text, Table};
use crate::CliError;

/// A command's JSON payload, optional CSV form, and cross-check status.
pub struct Emitted {
    pub json: serde_json::Value,
    pub table: Option<Table>,
    pub consistent: bool,
}

fn emit<T: Serialize>(data: &T, table: Option<Table>, consistent: bool) -> Emitted {
    Emitted {
        json: serde_json::to_value(data).expect("payloads serialize"),
        table,
        consistent,
    }
}

fn coords(p: &Point) -> Vec<u32> {
    p.coords().to_vec()
}

fn face_coords(f: &Face) -> Vec<Vec<u32>> {
    f.points().iter().map(coords).collect()
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(BigUint::to_string).collect()
}

#[derive(Serialize)]
struct PointsData {
    q: usize,
    r: u32,
    count: usize,
    points: Vec<Vec<u32>>,
}

pub fn points(q: usize, r: u32) -> Result<Emitted, CliError> {
    let pts: Vec<Vec<u32>> = enumerate_points(q, r).iter().map(coords).collect();
    let mut table = Table::new((1..=q).map(|i| format!("x{i}")));
    for p in &pts {
        table.push(p.iter().map(u32::to_string).collect());
    }
    let data = PointsData {
        q,
        r,
        count: pts.len(),
        points: pts,
    };
    Ok(emit(&data, Some(table), true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Geometric,
    Labels,
    Catalog,
    All,
}

#[derive(Serialize)]
struct WitnessData {
    point: Vec<u32>,
    subset: Vec<Vec<u32>>,
    whole_face: bool,
}

#[derive(Serialize)]
struct CheckFaceData {
    q: usize,
    r: u32,
    face: Vec<Vec<u32>>,
    geometric: Option<bool>,
    witness: Option<WitnessData>,
    labels: Option<bool>,
    catalog: Option<bool>,
    agree: bool,
}

pub fn parse_point(text: &str, q: usize, r: u32) -> Result<Point, CliError> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<Vec<u32>, _>>()
        .map_err(|_| CliError::Usage(format!("cannot parse point '{text}'")))?;
    if coords.len() != q {
        return Err(CliError::Usage(format!("point '{text}' has {} coordinates, expected {q}", coords.len())));
    }
    if coords.iter().sum::<u32>() != r {
        return Err(CliError::Usage(format!("point '{text}' does not have degree {r}")));
    }
    Point::new(coords).map_err(CliError::from)
}

pub fn check_face(q: usize, r: u32, vertices: &[String], method: Method) -> Result<Emitted, CliError> {
    if method == Method::Catalog && r != 3 {
        return Err(CliError::Usage("the catalog method needs r = 3".into()));
    }
    let pts = vertices
        .iter()
        .map(|v| parse_point(v, q, r))
        .collect::<Result<Vec<_>, _>>()?;
    let face = Face::from_points(pts)?;
    let wants = |m: Method| method == m || method == Method::All;

    let (geometric, witness) = if wants(Method::Geometric) {
        let report = find_witness(&face)?;
        let witness = report.map(|w| WitnessData {
            point: coords(&w.witness),
            subset: w.subset.iter().map(|&i| coords(&face.points()[i])).collect(),
            whole_face: w.whole_face,
        });
        (Some(witness.is_none()), witness)
    } else {
        (None, None)
    };
    let labels = if wants(Method::Labels) {
        let power = extremal_power(q, r)?;
        let index = PointIndex::new(q, r);
        let positions: Vec<usize> = face
            .points()
            .iter()
            .map(|p| index.position(p).expect("parsed points lie in N^r_q"))
            .collect();
        Some(is_scarf_face_by_labels(&power.ideal, &positions)?)
    } else {
        None
    };
    let catalog = if wants(Method::Catalog) && r == 3 {
        Some(is_face_r3(&face)?)
    } else {
        None
    };
    let verdicts: Vec<bool> = [geometric, labels, catalog].into_iter().flatten().collect();
    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    let data = CheckFaceData {
        q,
        r,
        face: face_coords(&face),
        geometric,
        witness,
        labels,
        catalog,
        agree,
    };
    Ok(emit(&data, None, agree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    All,
    #[value(name = "U")]
    U,
    #[value(name = "W")]
    W,
}

#[derive(Serialize)]
struct FacetData {
    descriptor: String,
    family: &'static str,
    size: usize,
    vertices: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct FacetsData {
    q: usize,
    r: u32,
    family: &'static str,
    count: usize,
    facets: Vec<FacetData>,
}

pub fn facets(q: usize, r: u32, family: Family) -> Result<Emitted, CliError> {
    if r != 3 {
        return Err(CliError::Usage("the facet catalog exists for r = 3 only".into()));
    }
    let mut out = Vec::new();
    let mut table = Table::new(["descriptor", "family", "size", "vertices"]);
    for (d, f) in facets_r3(q)? {
        let fam = if d.is_w() { "W" } else { "U" };
        let keep = match family {
            Family::All => true,
            Family::U => !d.is_w(),
            Family::W => d.is_w(),
        };
        if !keep {
            continue;
        }
        let vertices = face_coords(&f);
        table.push(vec![d.to_string(), fam.into(), f.len().to_string(), face_text(&vertices)]);
        out.push(FacetData {
            descriptor: d.to_string(),
            family: fam,
            size: f.len(),
            vertices,
        });
    }
    let data = FacetsData {
        q,
        r,
        family: match family {
            Family::All => "all",
            Family::U => "U",
            Family::W => "W",
        },
        count: out.len(),
        facets: out,
    };
    Ok(emit(&data, Some(table), true))
}

/// Parse `a`, `a..b` (inclusive) or `a..=b`.
pub fn parse_degrees(text: &str) -> Result<RangeInclusive<u64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse degree range '{text}'"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        None => {
            let i = num(text)?;
            Ok(i..=i)
        }
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

#[derive(Serialize)]
struct BoundRowData {
    i: u64,
    scarf: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    taylor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    taylor_over_scarf: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_over_scarf: Option<Option<String>>,
}

#[derive(Serialize)]
struct BoundsData {
    q: u64,
    r: u32,
    compare: bool,
    rows: Vec<BoundRowData>,
}

fn ratio(num: &BigUint, den: &BigUint) -> Option<String> {
    if den.is_zero() {
        return None;
    }
    let r = num_rational_string(num, den);
    Some(r)
}

fn num_rational_string(num: &BigUint, den: &BigUint) -> String {
    let g = gcd(num.clone(), den.clone());
    let (n, d) = (num / &g, den / &g);
    if d == BigUint::from(1u8) {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

pub fn bounds(q: u64, r: u32, degrees: Option<RangeInclusive<u64>>, compare: bool) -> Result<Emitted, CliError> {
    if !(1..=3).contains(&r) {
        return Err(CliError::Usage(format!("the Scarf column needs r in 1..=3, got {r}")));
    }
    let degrees = match degrees {
        Some(d) => d,
        None => 0..=pd_bound(q, r)?,
    };
    let table_rows = bound_table(q, r, degrees)?;
    let mut header = vec!["i", "scarf"];
    if compare {
        header.extend(["l", "taylor", "taylor_over_scarf", "l_over_scarf"]);
    }
    let mut table = Table::new(header);
    let mut rows = Vec::new();
    for row in table_rows.rows {
        let scarf = row.scarf.expect("r <= 3 has a Scarf column");
        let mut data = BoundRowData {
            i: row.i,
            scarf: scarf.to_string(),
            l: None,
            taylor: None,
            taylor_over_scarf: None,
            l_over_scarf: None,
        };
        if compare {
            data.l = Some(row.l.as_ref().map(BigUint::to_string));
            data.taylor = Some(row.taylor.to_string());
            data.taylor_over_scarf = Some(ratio(&row.taylor, &scarf));
            data.l_over_scarf = Some(row.l.as_ref().and_then(|l| ratio(l, &scarf)));
        }
        let mut csv_row = vec![data.i.to_string(), data.scarf.clone()];
        if compare {
            let opt = |v: &Option<Option<String>>| v.clone().flatten().unwrap_or_default();
            csv_row.push(opt(&data.l));
            csv_row.push(data.taylor.clone().unwrap_or_default());
            csv_row.push(opt(&data.taylor_over_scarf));
            csv_row.push(opt(&data.l_over_scarf));
        }
        table.push(csv_row);
        rows.push(data);
    }
    let data = BoundsData { q, r, compare, rows };
    Ok(emit(&data, Some(table), true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FvectorMethod {
    Formula,
    Enumerate,
    Both,
}

#[derive(Serialize)]
struct FvectorData {
    q: u64,
    r: u32,
    method: &'static str,
    pd: u64,
    formula: Option<Vec<String>>,
    enumerated: Option<Vec<String>>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    u_complex_match: Option<bool>,
    log_concave: bool,
    unimodal: bool,
}

pub fn fvector(q: u64, method: FvectorMethod) -> Result<Emitted, CliError> {
    let pd = pd_bound(q, 3)?;
    let formula = match method {
        FvectorMethod::Enumerate => None,
        _ => Some(betti_vector(q, 3)?.values),
    };
    let enumerated = match method {
        FvectorMethod::Formula => None,
        _ => Some(f_vector_enumerated(q as usize)?),
    };
    let matches = match (&formula, &enumerated) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let u_complex_match = match (&enumerated, q <= 4) {
        (Some(e), true) => {
            let index = PointIndex::new(q as usize, 3);
            let masks = u_complex_facets(q as usize, 3)?
                .iter()
                .map(|f| index.mask_of(f))
                .collect::<Result<Vec<_>, _>>()?;
            let closure: Vec<BigUint> = f_vector_of_closure(&masks).into_iter().map(BigUint::from).collect();
            Some(&closure == e)
        }
        _ => None,
    };
    let shown = formula.as_ref().or(enumerated.as_ref()).expect("some method ran");
    let mut table = Table::new(["i", "formula", "enumerated"]);
    let len = shown.len().max(enumerated.as_ref().map_or(0, Vec::len));
    for i in 0..len {
        let cell = |v: &Option<Vec<BigUint>>| {
            v.as_ref()
                .map(|v| v.get(i).cloned().unwrap_or_default().to_string())
                .unwrap_or_default()
        };
        table.push(vec![i.to_string(), cell(&formula), cell(&enumerated)]);
    }
    let data = FvectorData {
        q,
        r: 3,
        method: match method {
            FvectorMethod::Formula => "formula",
            FvectorMethod::Enumerate => "enumerate",
            FvectorMethod::Both => "both",
        },
        pd,
        log_concave: is_log_concave(shown),
        unimodal: is_unimodal(shown),
        formula: formula.as_deref().map(strings),
        enumerated: enumerated.as_deref().map(strings),
        matches,
        u_complex_match,
    };
    let consistent = matches != Some(false) && u_complex_match != Some(false);
    Ok(emit(&data, Some(table), consistent))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Full,
    Sampled,
}

#[derive(Serialize)]
struct FullData {
    cells: u64,
    pairs: usize,
    homogeneous: bool,
    acyclic: bool,
    perfect_on_nonfaces: bool,
    critical_cells: u64,
    scarf_faces: u64,
    critical_equals_scarf: bool,
}

#[derive(Serialize)]
struct SampledData {
    samples: usize,
    seed: u64,
    stable: usize,
}

#[derive(Serialize)]
struct MorseData {
    q: usize,
    r: u32,
    scale: &'static str,
    full: Option<FullData>,
    sampled: Option<SampledData>,
    pass: bool,
}

pub fn morse_verify(q: usize, scale: Scale, samples: usize, seed: u64) -> Result<Emitted, CliError> {
    let ctx = MorseContext::new(q)?;
    let data = match scale {
        Scale::Full => {
            let v = verify_full(&ctx)?;
            MorseData {
                q,
                r: 3,
                scale: "full",
                pass: v.all_pass(),
                full: Some(FullData {
                    cells: v.cells,
                    pairs: v.pairs,
                    homogeneous: v.homogeneous,
                    acyclic: v.acyclic,
                    perfect_on_nonfaces: v.perfect_on_nonfaces,
                    critical_cells: v.critical_cells,
                    scarf_faces: v.scarf_faces,
                    critical_equals_scarf: v.critical_equals_scarf,
                }),
                sampled: None,
            }
        }
        Scale::Sampled => {
            let stable = verify_sampled(&ctx, samples, seed)?;
            MorseData {
                q,
                r: 3,
                scale: "sampled",
                pass: stable == samples,
                full: None,
                sampled: Some(SampledData { samples, seed, stable }),
            }
        }
    };
    let pass = data.pass;
    Ok(emit(&data, None, pass))
}

fn log10(n: &BigUint) -> String {
    if n.is_zero() {
        return String::new();
    }
    // Keep the leading 60 bits so the conversion never overflows.
    let shift = n.bits().saturating_sub(60);
    let head = (n >> shift).to_f64().expect("fits in f64");
    format!("{:.6}", head.log10() + shift as f64 * std::f64::consts::LOG10_2)
}

pub fn plot_data(qs: &[u64]) -> Result<Table, CliError> {
    let mut table = Table::new(["q", "i", "scarf", "l", "taylor", "log10_scarf", "log10_l", "log10_taylor"]);
    for &q in qs {
        let vertices = q * (q + 1) * (q + 2) / 6;
        for i in 0..vertices {
            let s = beta_bound(q, 3, i)?;
            let l = l_bound(q, 3, i)?;
            let t = taylor_bound(q, 3, i)?;
            table.push(vec![
                q.to_string(),
                i.to_string(),
                s.to_string(),
                l.to_string(),
                t.to_string(),
                log10(&s),
                log10(&l),
                log10(&t),
            ]);
        }
    }
    Ok(table)
}
