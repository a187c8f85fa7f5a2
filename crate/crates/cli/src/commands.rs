use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use repshift_core::fingroup::{ExtensionData, FiniteGroup};
use repshift_core::laurent::{
    det_mod, parse_matrix, parse_poly, pullback_char_poly, three_cover_factor, two_cover_factor, ZMatrix,
};
use repshift_core::lifting::lift_orbit_subshift;
use repshift_core::repshift::{
    build_block_graph, build_shift_graph, classify_transitive, subgroups_from_transitive, BuildOptions,
    PeriodicRep, RepGraph,
};
use repshift_core::shiftgraph::CardinalityClass;
use repshift_core::zgroup::{parse_presentation, Presentation};
use repshift_core::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::{AlexCommand, Command, Failure};

/// Most periodic orbits swept by `lift --all-periodic`.
const MAX_ORBITS: usize = 10_000;

pub struct Output {
    pub digest: String,
    pub fields: Map<String, Value>,
    /// Replaces the JSON report on stdout when set.
    pub text: Option<String>,
}

type Outcome<T> = Result<T, Failure>;

fn sha256(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |error| Failure::Core {
        file: Some(path.display().to_string()),
        error,
    }
}

fn core(error: Error) -> Failure {
    Failure::Core { file: None, error }
}

fn load_presentation(path: &Path) -> Outcome<(Presentation, String)> {
    let text = read(path)?;
    let p = parse_presentation(&text).map_err(|e| in_file(path)(e.into()))?;
    Ok((p, sha256(text.as_bytes())))
}

fn class_fields(c: CardinalityClass, fields: &mut Map<String, Value>) {
    fields.insert("class".into(), json!(c.tag()));
    if let CardinalityClass::Finite(n) = c {
        fields.insert("count".into(), json!(n));
    }
}

fn class_value(c: CardinalityClass) -> Value {
    let mut m = Map::new();
    class_fields(c, &mut m);
    Value::Object(m)
}

fn big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn run(cmd: &Command, opts: &BuildOptions) -> Outcome<Output> {
    match cmd {
        Command::Graph {
            file,
            target,
            dot,
            json,
            block,
        } => graph(file, target, dot.as_deref(), *json, *block, opts),
        Command::Classify { file, target, periodic } => classify(file, target, *periodic, opts),
        Command::Subgroups { file, index } => subgroups(file, *index, opts),
        Command::Lift {
            file,
            ext,
            rep,
            max_period,
            ..
        } => lift(file, ext, rep.as_deref(), *max_period, opts),
        Command::Alex(a) => alex(a),
    }
}

fn graph(file: &Path, target: &str, dot: Option<&Path>, as_json: bool, block: usize, opts: &BuildOptions) -> Outcome<Output> {
    let (p, digest) = load_presentation(file)?;
    let group = FiniteGroup::from_name(target).map_err(core)?;
    let rg = build_block_graph(&p, &group, block, opts).map_err(in_file(file))?;
    let g = &rg.graph;
    let class = rg.classify();
    let dot_text = dot.map(|_| g.to_dot(&format!("Phi_{}", group.name())));
    let mut text = None;
    if let (Some(path), Some(d)) = (dot, &dot_text) {
        if path == Path::new("-") {
            if as_json {
                return Err(Failure::Usage("--dot - cannot be combined with --json".into(), None));
            }
            text = Some(d.clone());
        } else {
            std::fs::write(path, d).map_err(|e| Failure::Io {
                path: PathBuf::from(path),
                message: e.to_string(),
            })?;
        }
    }
    if text.is_none() && !as_json {
        let mut s = String::new();
        for (i, v) in g.vertices().iter().enumerate() {
            let _ = writeln!(s, "vertex {i}: {v}");
        }
        for (i, e) in g.edges().iter().enumerate() {
            let _ = writeln!(s, "edge {i}: {} -> {} [{}]", e.source, e.target, e.label);
        }
        match class {
            CardinalityClass::Finite(n) => {
                let _ = writeln!(s, "class: finite ({n})");
            }
            c => {
                let _ = writeln!(s, "class: {}", c.tag());
            }
        }
        text = Some(s);
    }
    let mut fields = Map::new();
    fields.insert("target".into(), json!(group.name()));
    fields.insert("block".into(), json!(block));
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| json!({"id": i, "label": v}))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| json!({"id": i, "source": e.source, "target": e.target, "label": e.label}))
        .collect();
    fields.insert("vertices".into(), Value::Array(vertices));
    fields.insert("edges".into(), Value::Array(edges));
    class_fields(class, &mut fields);
    Ok(Output { digest, fields, text })
}

fn classify(file: &Path, target: &str, periodic: Option<usize>, opts: &BuildOptions) -> Outcome<Output> {
    let (p, digest) = load_presentation(file)?;
    let group = FiniteGroup::from_name(target).map_err(core)?;
    let rg = build_shift_graph(&p, &group, opts).map_err(in_file(file))?;
    let mut fields = Map::new();
    fields.insert("target".into(), json!(group.name()));
    fields.insert("vertices".into(), json!(rg.graph.num_vertices()));
    fields.insert("edges".into(), json!(rg.graph.num_edges()));
    fields.insert("components".into(), json!(rg.graph.irreducible_components().len()));
    class_fields(rg.classify(), &mut fields);
    if let Some(n) = periodic {
        let counts = (1..=n)
            .map(|r| rg.graph.count_periodic_points(r).map(|c| big(&c)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(core)?;
        fields.insert("periodic_points".into(), Value::Array(counts));
    }
    Ok(Output {
        digest,
        fields,
        text: None,
    })
}

fn subgroups(file: &Path, index: usize, opts: &BuildOptions) -> Outcome<Output> {
    let (p, digest) = load_presentation(file)?;
    let transitive = classify_transitive(&p, index, opts).map_err(in_file(file))?;
    let count = subgroups_from_transitive(transitive, index).map_err(core)?;
    let mut fields = Map::new();
    fields.insert("index".into(), json!(index));
    fields.insert("transitive".into(), class_value(transitive));
    class_fields(count, &mut fields);
    Ok(Output {
        digest,
        fields,
        text: None,
    })
}

fn parse_rep(text: &str, p: &Presentation, sigma: &FiniteGroup, opts: &BuildOptions) -> Result<PeriodicRep, Error> {
    if let Some(path) = text.strip_prefix("cycle:") {
        let rg = build_shift_graph(p, sigma, opts)?;
        let edges = cycle_edges(&rg, path)?;
        PeriodicRep::from_cycle(&rg, &edges)
    } else if let Some(steps) = text.strip_prefix("seq:") {
        let values = steps
            .split(';')
            .map(|step| step.split('/').map(|v| sigma.parse_elem(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        PeriodicRep::new(p, sigma, values)
    } else {
        Err(Error::Domain(format!("representation '{text}' must start with cycle: or seq:")))
    }
}

/// Edges of a closed path given as comma-separated edge ids or edge labels.
/// Labels may contain commas themselves, so each step takes the longest
/// label that ends at a separator.
fn cycle_edges(rg: &RepGraph, path: &str) -> Result<Vec<usize>, Error> {
    let tokens: Vec<&str> = path.split(',').map(str::trim).collect();
    if let Ok(ids) = tokens.iter().map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>() {
        return Ok(ids);
    }
    let labels: Vec<&str> = rg.graph.edges().iter().map(|e| e.label.as_str()).collect();
    let mut rest = path.trim();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let hit = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| {
                rest.strip_prefix(**l)
                    .is_some_and(|after| after.trim_start().is_empty() || after.trim_start().starts_with(','))
            })
            .max_by_key(|(_, l)| l.len());
        let Some((e, l)) = hit else {
            return Err(Error::Domain(format!("no edge label starts '{rest}'")));
        };
        out.push(e);
        rest = rest[l.len()..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn periodic_reps(rg: &RepGraph, max_period: usize) -> Result<Vec<PeriodicRep>, Error> {
    let all = rg.group.all();
    rg.periodic_orbits(max_period, MAX_ORBITS)?
        .iter()
        .map(|c| PeriodicRep::from_cycle(rg, c))
        .filter(|r| r.as_ref().map_or(true, |r| r.image(&rg.group) == all))
        .collect()
}

fn lift(file: &Path, ext_name: &str, rep: Option<&str>, max_period: Option<usize>, opts: &BuildOptions) -> Outcome<Output> {
    let (p, digest) = load_presentation(file)?;
    let ext = ExtensionData::standard(ext_name).map_err(core)?;
    let sigma = ext.quotient();
    let reps = match (rep, max_period) {
        (Some(text), _) => vec![parse_rep(text, &p, sigma, opts).map_err(in_file(file))?],
        (None, Some(r)) => {
            let rg = build_shift_graph(&p, sigma, opts).map_err(in_file(file))?;
            periodic_reps(&rg, r).map_err(in_file(file))?
        }
        (None, None) => return Err(Failure::Usage("either --rep or --all-periodic is required".into(), None)),
    };
    let total = ext.total();
    let mut any_plain = false;
    let mut any_onto = false;
    let mut rows = Vec::new();
    for rho in &reps {
        let orbit = lift_orbit_subshift(&p, &ext, rho, opts).map_err(in_file(file))?;
        let onto = orbit.images().contains(&total.all());
        any_plain |= orbit.has_lift();
        any_onto |= onto;
        let components: Vec<Value> = orbit.component_classes().into_iter().map(class_value).collect();
        let image_orders: Vec<usize> = orbit.images().iter().map(|h| h.len()).collect();
        let mut row = Map::new();
        row.insert("rep".into(), json!(orbit.rho.display(&p, sigma)));
        row.insert("period".into(), json!(orbit.rho.period()));
        row.insert("lifts".into(), class_value(orbit.classify()));
        row.insert("components".into(), Value::Array(components));
        row.insert("image_orders".into(), json!(image_orders));
        row.insert("plain_lift_exists".into(), json!(orbit.has_lift()));
        row.insert("surjective_lift_exists".into(), json!(onto));
        rows.push(Value::Object(row));
    }
    let mut fields = Map::new();
    fields.insert("ext".into(), json!(ext.name()));
    fields.insert("reps".into(), Value::Array(rows));
    fields.insert("plain_lift_exists".into(), json!(any_plain));
    fields.insert("surjective_lift_exists".into(), json!(any_onto));
    Ok(Output {
        digest,
        fields,
        text: None,
    })
}

fn load_matrix(path: &Path) -> Outcome<(ZMatrix, char, String)> {
    let text = read(path)?;
    let (m, var) = parse_matrix(&text).map_err(|e| in_file(path)(e.into()))?;
    Ok((m, var.unwrap_or('s'), sha256(text.as_bytes())))
}

fn add_mod(m: &ZMatrix, modulus: Option<u64>, var: char, fields: &mut Map<String, Value>) -> Outcome<()> {
    if let Some(p) = modulus {
        let d = det_mod(m, p).map_err(core)?;
        fields.insert("modulus".into(), json!(p));
        fields.insert("det_T_mod_p".into(), json!(d.normalized().display_var(var)));
    }
    Ok(())
}

fn alex(cmd: &AlexCommand) -> Outcome<Output> {
    let mut fields = Map::new();
    let digest = match cmd {
        AlexCommand::Pullback { poly, r } => {
            let (delta, var) = parse_poly(poly).map_err(|e| core(e.into()))?;
            let out = pullback_char_poly(&delta, *r).map_err(core)?;
            let var = var.unwrap_or('t');
            fields.insert("input".into(), json!(delta.display_var(var)));
            fields.insert("r".into(), json!(r));
            fields.insert("pullback".into(), json!(out.display_var('s')));
            fields.insert("input_degree".into(), json!(delta.span()));
            fields.insert("degree".into(), json!(out.span()));
            let sym = |p: &repshift_core::laurent::ZPoly| p.is_symmetric().ok();
            fields.insert("input_symmetric".into(), json!(sym(&delta)));
            fields.insert("symmetric".into(), json!(sym(&out)));
            sha256(poly.as_bytes())
        }
        AlexCommand::Cover2 { matrix, modulus } => {
            let (m, var, digest) = load_matrix(matrix)?;
            let blocks = m.circulant_blocks(2).map_err(in_file(matrix))?;
            let rep = two_cover_factor(&blocks[0], &blocks[1]).map_err(in_file(matrix))?;
            fields.insert("det_T".into(), json!(m.det().map_err(core)?.display_var(var)));
            fields.insert("det_sum".into(), json!(rep.det_sum.display_var(var)));
            fields.insert("det_diff".into(), json!(rep.det_diff.display_var(var)));
            fields.insert("g".into(), json!(rep.g.display_var(var)));
            fields.insert("g_mod3".into(), json!(rep.g_mod3.normalized().display_var(var)));
            fields.insert("reason".into(), json!(rep.verdict.reason()));
            fields.insert("surjective_lift_exists".into(), json!(rep.verdict.surjective_lift_exists()));
            add_mod(&m, *modulus, var, &mut fields)?;
            digest
        }
        AlexCommand::Cover3 { matrix, modulus } => {
            let (m, var, digest) = load_matrix(matrix)?;
            let blocks = m.circulant_blocks(3).map_err(in_file(matrix))?;
            let rep = three_cover_factor(&blocks[0], &blocks[1], &blocks[2]).map_err(in_file(matrix))?;
            fields.insert("det_T".into(), json!(m.det().map_err(core)?.display_var(var)));
            fields.insert("delta_tilde".into(), json!(rep.delta_tilde.display_var(var)));
            fields.insert("F".into(), json!(rep.f.display_var(var)));
            fields.insert("FFbar".into(), json!(rep.ffbar.display_var(var)));
            fields.insert("FFbar_mod2".into(), json!(rep.ffbar_mod2.normalized().display_var(var)));
            fields.insert("s_minus_1_power".into(), json!(rep.s_minus_1_power));
            fields.insert("reason".into(), json!(rep.verdict.reason()));
            fields.insert("surjective_lift_exists".into(), json!(rep.verdict.surjective_lift_exists()));
            add_mod(&m, *modulus, var, &mut fields)?;
            digest
        }
        AlexCommand::Det { matrix, modulus } => {
            let (m, var, digest) = load_matrix(matrix)?;
            let d = m.det().map_err(core)?;
            fields.insert("det".into(), json!(d.display_var(var)));
            fields.insert("normalized".into(), json!(d.normalized().display_var(var)));
            add_mod(&m, *modulus, var, &mut fields)?;
            digest
        }
    };
    Ok(Output {
        digest,
        fields,
        text: None,
    })
}
