//! Command implementations behind the `vlimits` binary: report assembly,
//! DOT and SVG emission. The binary itself only parses arguments and routes
//! here, so everything is testable in-process.

use crate::graph::{Cochain0, FunctionBox, HalfCochain};
use crate::io::{self, GraphData};
use crate::linalg::Rat;
use crate::slopes::SlopeContext;
use crate::tilings::{Tile, TileSet};
use crate::toric::{census, CharacterPair, Census, TruncationWindow};
use crate::verify::{run_suites, SuiteId};
use num::{One, Signed, Zero};
use serde_json::{Map, Value};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input files or option values: exit code 3.
    Parse(String),
    /// Domain refusals and unusable option combinations: exit code 2.
    Usage(String),
    /// A verification suite failed: exit code 1. Carries the full report.
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Usage(m) | CliError::VerifyFailed(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}

pub fn load_graph(text: &str) -> Result<GraphData, CliError> {
    io::parse_graph_json(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// `graph info`: genus, tree count, both lattice indices, and the Jacobian
/// invariant factors.
pub fn cmd_graph_info(data: &GraphData) -> String {
    let g = &data.graph;
    let mut doc = Map::new();
    doc.insert("vertices".into(), Value::from(g.vertex_count()));
    doc.insert("edges".into(), Value::from(g.edge_count()));
    doc.insert("genus".into(), Value::from(g.genus()));
    doc.insert(
        "spanning_trees".into(),
        Value::from(g.spanning_tree_count().to_string()),
    );
    doc.insert(
        "lattice_index".into(),
        Value::from(g.lattice_index().to_string()),
    );
    doc.insert(
        "adjoint_image_index".into(),
        Value::from(g.adjoint_image_index().to_string()),
    );
    doc.insert(
        "jacobian_invariant_factors".into(),
        Value::Array(
            g.jacobian_invariants()
                .iter()
                .map(|d| Value::from(d.to_string()))
                .collect(),
        ),
    );
    doc.insert(
        "edge_lengths".into(),
        Value::Array(data.lengths.iter().map(|&l| Value::from(l)).collect()),
    );
    doc.insert(
        "edge_twists".into(),
        Value::Array(data.twists.iter().map(|&t| Value::from(t)).collect()),
    );
    pretty(Value::Object(doc))
}

#[derive(Clone, Debug)]
pub struct LimitsConfig {
    pub n_max: u32,
    pub f_radius: i64,
    pub cell_radius: i64,
    pub a: Option<Vec<String>>,
    pub b: Option<Vec<String>>,
    pub bdeg: Option<Vec<i64>>,
    pub seed: u64,
}

impl Default for LimitsConfig {
    fn default() -> Self {
        LimitsConfig {
            n_max: 4,
            f_radius: 6,
            cell_radius: 2,
            a: None,
            b: None,
            bdeg: None,
            seed: 0,
        }
    }
}

pub fn parse_characters(
    data: &GraphData,
    a: Option<&[String]>,
    b: Option<&[String]>,
) -> Result<CharacterPair, CliError> {
    let g = &data.graph;
    let basis = g.cycle_basis();
    let parse_list = |items: &[String], want: usize, what: &str| -> Result<Vec<Rat>, CliError> {
        if items.len() != want {
            return Err(CliError::Usage(format!(
                "expected {want} values for {what}, got {}",
                items.len()
            )));
        }
        items
            .iter()
            .map(|s| {
                let v = io::parse_rat(s).map_err(|e| CliError::Parse(e.to_string()))?;
                if v.is_zero() {
                    return Err(CliError::Usage(format!(
                        "{what} values must be nonzero, got `{s}`"
                    )));
                }
                Ok(v)
            })
            .collect()
    };
    let a_vals = match a {
        Some(items) => parse_list(items, g.edge_count(), "a")?,
        None => vec![Rat::one(); g.edge_count()],
    };
    let b_vals = match b {
        Some(items) => parse_list(items, basis.len(), "b")?,
        None => vec![Rat::one(); basis.len()],
    };
    CharacterPair::new(g, &basis, a_vals, b_vals).map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_bdeg(data: &GraphData, bdeg: Option<&[i64]>) -> Result<Cochain0<i64>, CliError> {
    let n = data.graph.vertex_count();
    match bdeg {
        None => Ok(Cochain0::zero(n)),
        Some(values) if values.len() == n => Ok(Cochain0::from_values(values.to_vec())),
        Some(values) => Err(CliError::Usage(format!(
            "expected {n} values for bdeg, got {}",
            values.len()
        ))),
    }
}

fn build_census(data: &GraphData, cfg: &LimitsConfig) -> Result<(Census, Cochain0<i64>), CliError> {
    let ch = parse_characters(data, cfg.a.as_deref(), cfg.b.as_deref())?;
    let bdeg = resolve_bdeg(data, cfg.bdeg.as_deref())?;
    let ctx = SlopeContext::with_integer_twist(
        &data.graph,
        &data.lengths,
        &data.twist_cochain(),
        1,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let window = TruncationWindow {
        n_max: cfg.n_max,
        f_radius: cfg.f_radius,
        cell_radius: cfg.cell_radius,
    };
    let census = census(&ctx, &ch, &bdeg, &window).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((census, bdeg))
}

/// `limits`: census JSON and the degeneration poset in DOT form.
pub fn cmd_limits(data: &GraphData, cfg: &LimitsConfig) -> Result<(String, String), CliError> {
    let (census, bdeg) = build_census(data, cfg)?;
    let g = &data.graph;

    let mut doc = Map::new();
    let mut window = Map::new();
    window.insert("n_max".into(), Value::from(cfg.n_max));
    window.insert("f_radius".into(), Value::from(cfg.f_radius));
    window.insert("cell_radius".into(), Value::from(cfg.cell_radius));
    doc.insert("window".into(), Value::Object(window));
    doc.insert("seed".into(), Value::from(cfg.seed));
    let mut bdeg_map = Map::new();
    for (v, id) in g.vertex_ids().iter().enumerate() {
        bdeg_map.insert(id.clone(), Value::from(bdeg.values[v]));
    }
    doc.insert("bdeg".into(), Value::Object(bdeg_map));

    let cells: Vec<Value> = census
        .entries
        .iter()
        .map(|d| {
            let mut m = Map::new();
            m.insert("cell".into(), Value::from(d.cell.to_string()));
            let mut idx = Map::new();
            for e in 0..g.edge_count() {
                idx.insert(g.edge(e).id.clone(), Value::from(io::half_str(d.cell.twice[e])));
            }
            m.insert("index".into(), Value::Object(idx));
            m.insert("dim".into(), Value::from(d.dim));
            m.insert("n".into(), Value::from(d.exponent));
            let mut fmap = Map::new();
            for (v, id) in g.vertex_ids().iter().enumerate() {
                fmap.insert(id.clone(), Value::from(d.f.values[v]));
            }
            m.insert("f".into(), Value::Object(fmap));
            let mut degrees = Map::new();
            for (v, id) in g.vertex_ids().iter().enumerate() {
                degrees.insert(id.clone(), Value::from(d.degrees.values[v]));
            }
            m.insert("degrees".into(), Value::Object(degrees));
            let gluing: Vec<Value> = d
                .gluing
                .iter()
                .map(|c| {
                    let mut gm = Map::new();
                    gm.insert("edge".into(), Value::from(g.edge(c.edge).id.clone()));
                    gm.insert("x".into(), Value::from(io::rat_str(&c.x)));
                    gm.insert("y".into(), Value::from(io::rat_str(&c.y)));
                    Value::Object(gm)
                })
                .collect();
            m.insert("gluing".into(), Value::Array(gluing));
            m.insert("h1_class".into(), Value::from(d.h1_class));
            m.insert("orbit_dim".into(), Value::from(d.orbit_dim));
            Value::Object(m)
        })
        .collect();
    doc.insert("cells".into(), Value::Array(cells));

    let hasse: Vec<Value> = census
        .hasse
        .iter()
        .map(|&(i, j)| {
            Value::Array(vec![
                Value::from(census.entries[i].cell.to_string()),
                Value::from(census.entries[j].cell.to_string()),
            ])
        })
        .collect();
    doc.insert("hasse".into(), Value::Array(hasse));

    let mut diag = Map::new();
    diag.insert(
        "boundary_touched".into(),
        Value::from(census.boundary_touched),
    );
    diag.insert(
        "interior_connected".into(),
        match (census.boundary_touched, census.interior_connected) {
            // Connectivity claims are suppressed when the window boundary
            // carries census cells.
            (true, _) => Value::Null,
            (false, Some(c)) => Value::from(c),
            (false, None) => Value::Null,
        },
    );
    if census.boundary_touched {
        diag.insert(
            "warning".into(),
            Value::from(
                "census cells lie on the cell-window boundary; enlarge --window \
                 to trust connectivity claims",
            ),
        );
    }
    diag.insert(
        "merged_duplicates".into(),
        Value::from(census.merged_duplicates),
    );
    doc.insert("diagnostics".into(), Value::Object(diag));

    Ok((pretty(Value::Object(doc)), census_dot(&census)))
}

fn census_dot(census: &Census) -> String {
    let mut out = String::from("digraph degenerations {\n  rankdir=TB;\n");
    for d in &census.entries {
        out.push_str(&format!(
            "  \"{}\" [label=\"{} dim {}\"];\n",
            d.cell, d.cell, d.dim
        ));
    }
    for &(i, j) in &census.hasse {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            census.entries[i].cell, census.entries[j].cell
        ));
    }
    out.push_str("}\n");
    out
}

/// `chipfire`: fire a sequence of base vertices and return the divisor.
pub fn cmd_chipfire(
    data: &GraphData,
    divisor_text: &str,
    fire: &[String],
) -> Result<String, CliError> {
    let (sub, d) =
        io::parse_divisor_json(divisor_text, data).map_err(|e| CliError::Parse(e.to_string()))?;
    if !sub.is_admissible(&d) {
        return Err(CliError::Usage(
            "divisor is not admissible: interior chain coefficients must be at most one chip per edge"
                .into(),
        ));
    }
    let mut current = d;
    for name in fire {
        let Some(v) = data.graph.vertex_index(name) else {
            return Err(CliError::Usage(format!("unknown vertex `{name}`")));
        };
        current = sub
            .fire(&current, v)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(pretty(io::divisor_to_json(&sub, &current)))
}

/// `verify`: run the named suites; a failure is an error carrying the report.
pub fn cmd_verify(
    data: &GraphData,
    suites: &[SuiteId],
    seed: u64,
) -> Result<String, CliError> {
    let reports = run_suites(data, suites, seed);
    let mut out = String::new();
    let mut all_passed = true;
    let mut checks = 0;
    for report in &reports {
        out.push_str(&format!("suite {}\n", report.suite.name()));
        for check in &report.checks {
            checks += 1;
            all_passed &= check.passed;
            out.push_str(&format!(
                "  [{}] {} — {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            ));
        }
    }
    out.push_str(&format!(
        "overall: {} ({} suites, {} checks, seed {})\n",
        if all_passed { "PASS" } else { "FAIL" },
        reports.len(),
        checks,
        seed
    ));
    if all_passed {
        Ok(out)
    } else {
        Err(CliError::VerifyFailed(out))
    }
}

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
];

fn cell_color(cell: &HalfCochain) -> &'static str {
    let s = cell.to_string();
    let mut h: usize = s.len();
    for b in s.bytes() {
        h = h.wrapping_mul(31).wrapping_add(b as usize);
    }
    PALETTE[h % PALETTE.len()]
}

/// `tiling svg`: sampled membership shading for ambient dimension 1 or 2,
/// with exact tile centers in a JSON sidecar. Higher dimensions are refused.
pub fn cmd_tiling_svg(
    data: &GraphData,
    samples: u32,
    view_radius: i64,
) -> Result<(String, String), CliError> {
    let g = &data.graph;
    let dim = g.vertex_count() - 1;
    if dim == 0 || dim > 2 {
        return Err(CliError::Usage(format!(
            "tiling figures are drawn for ambient dimension 1 or 2 only; this graph has \
             dimension {dim} (the census itself still runs via `limits`)"
        )));
    }
    let ctx = SlopeContext::with_integer_twist(g, &data.lengths, &data.twist_cochain(), 1)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let enum_radius = (2 * view_radius).max(4);
    let mut tile_set =
        TileSet::build(&ctx, enum_radius).map_err(|e| CliError::Usage(e.to_string()))?;
    // Keep the tiles whose centers can influence the view box.
    tile_set.retain_centers_within(2 * view_radius + 2);
    let visible: Vec<&Tile> = tile_set.tiles.iter().collect();

    let size = 720.0;
    let margin = 40.0;
    let scale = (size - 2.0 * margin) / (2.0 * view_radius as f64);
    let to_px = |x: f64| margin + (x + view_radius as f64) * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n",
        w = size as u32,
        h = if dim == 1 { 220 } else { size as u32 },
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let coords_of = |k: u32, s: u32| -> Rat {
        // -view .. view in s steps, exactly.
        Rat::new(
            ((2 * view_radius * k as i64) - view_radius * s as i64).into(),
            (s as i64).into(),
        )
    };

    let membership = |eta: &Cochain0<Rat>| -> Option<&'static str> {
        let mut hit: Option<&Tile> = None;
        let mut count = 0;
        for (idx, t) in visible.iter().enumerate() {
            if tile_set.contains(idx, eta, false).ok()? {
                count += 1;
                hit = Some(t);
            }
        }
        match (count, hit) {
            (1, Some(t)) => Some(cell_color(&t.cell)),
            (0, _) => Some("#ffffff"),
            _ => Some("#333333"), // shared boundary
        }
    };

    // Lattice translates of the origin, marked as crosses.
    let lattice_points: Vec<Vec<Rat>> = {
        let bound = Rat::from_integer((view_radius + 1).into());
        let mut out: Vec<Vec<Rat>> = FunctionBox::pinned(g.vertex_count(), view_radius.max(2))
            .map(|f| g.laplacian(&f.to_rat()).values)
            .filter(|vals| vals.iter().all(|v| v.abs() <= bound))
            .collect();
        out.sort();
        out.dedup();
        out
    };

    if dim == 1 {
        let y0 = 90.0;
        let band = 36.0;
        let step = (size - 2.0 * margin) / samples as f64;
        for k in 0..samples {
            let u = coords_of(k, samples - 1);
            let eta = Cochain0::from_values(vec![-u.clone(), u.clone()]);
            let color = membership(&eta).unwrap_or("#ffffff");
            let x = margin + k as f64 * step;
            svg.push_str(&format!(
                "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
                x, y0, step + 0.5, band, color
            ));
        }
        for t in &visible {
            let cx = to_px(io::rat_to_f64(&t.center.values[1]));
            svg.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"black\"/>\n",
                cx,
                y0 + band / 2.0
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
                cx,
                y0 + band + 24.0,
                t.cell
            ));
        }
        for p in &lattice_points {
            let cx = to_px(io::rat_to_f64(&p[1]));
            let cy = y0 - 14.0;
            svg.push_str(&format!(
                "  <path d=\"M {x0:.2} {y0:.2} L {x1:.2} {y1:.2} M {x0:.2} {y1:.2} L {x1:.2} {y0:.2}\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
                x0 = cx - 4.0, y0 = cy - 4.0, x1 = cx + 4.0, y1 = cy + 4.0
            ));
        }
    } else {
        let step = (size - 2.0 * margin) / samples as f64;
        for kx in 0..samples {
            for ky in 0..samples {
                let x = coords_of(kx, samples - 1);
                let y = coords_of(ky, samples - 1);
                let minus: Rat = -(x.clone() + y.clone());
                let eta = Cochain0::from_values(vec![minus, x.clone(), y.clone()]);
                let color = membership(&eta).unwrap_or("#ffffff");
                let px = margin + kx as f64 * step;
                let py = size - margin - (ky + 1) as f64 * step;
                svg.push_str(&format!(
                    "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
                    px, py, step + 0.5, step + 0.5, color
                ));
            }
        }
        for t in &visible {
            let cx = to_px(io::rat_to_f64(&t.center.values[1]));
            let cy = size - to_px(io::rat_to_f64(&t.center.values[2]));
            svg.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"black\"/>\n",
                cx, cy
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\" text-anchor=\"middle\">{}</text>\n",
                cx,
                cy - 6.0,
                t.cell
            ));
        }
        for p in &lattice_points {
            let cx = to_px(io::rat_to_f64(&p[1]));
            let cy = size - to_px(io::rat_to_f64(&p[2]));
            svg.push_str(&format!(
                "  <path d=\"M {x0:.2} {y0:.2} L {x1:.2} {y1:.2} M {x0:.2} {y1:.2} L {x1:.2} {y0:.2}\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
                x0 = cx - 4.0, y0 = cy - 4.0, x1 = cx + 4.0, y1 = cy + 4.0
            ));
        }
    }
    svg.push_str("</svg>\n");

    // Exact sidecar.
    let mut doc = Map::new();
    doc.insert("dimension".into(), Value::from(dim));
    doc.insert("view_radius".into(), Value::from(view_radius));
    let tiles_json: Vec<Value> = visible
        .iter()
        .map(|t| {
            let mut m = Map::new();
            m.insert("cell".into(), Value::from(t.cell.to_string()));
            let mut fmap = Map::new();
            for (v, id) in g.vertex_ids().iter().enumerate() {
                fmap.insert(id.clone(), Value::from(t.f.values[v]));
            }
            m.insert("f".into(), Value::Object(fmap));
            let mut center = Map::new();
            for (v, id) in g.vertex_ids().iter().enumerate() {
                center.insert(id.clone(), Value::from(io::rat_str(&t.center.values[v])));
            }
            m.insert("center".into(), Value::Object(center));
            m.insert(
                "subgraph_edges".into(),
                Value::Array(
                    (0..g.edge_count())
                        .filter(|&e| t.mask[e])
                        .map(|e| Value::from(g.edge(e).id.clone()))
                        .collect(),
                ),
            );
            m.insert("standard".into(), Value::from(t.standard));
            Value::Object(m)
        })
        .collect();
    doc.insert("tiles".into(), Value::Array(tiles_json));
    Ok((svg, pretty(Value::Object(doc))))
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
