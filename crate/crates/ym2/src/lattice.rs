//! Combinatorial layer: interior domains with areas, flag worlds,
//! refinement plans, loop-network specifications, and the JSON lattice
//! file format.
//!
//! All implemented expectation formulas depend only on the multiset of
//! interior-domain areas and the refinement tree, so lattices are
//! represented by areas plus refinement plans; no planar embedding is kept.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Issue, IssueCode, Result};
use crate::liegroup::{tensor_multiplicity, GroupSpec, Irrep};

/// Relative tolerance for user-supplied refinement sums; generated
/// refinements are exact by remainder assignment.
pub const AREA_SUM_RELATIVE_TOL: f64 = 1e-12;

/// One interior domain, identified by an opaque id, carrying its area |G_I|.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub id: String,
    pub area: f64,
}

/// One flag per interior domain, identified by the domain areas.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagWorldSpec {
    domains: Vec<Domain>,
}

impl FlagWorldSpec {
    pub fn new(domains: Vec<Domain>) -> Result<Self> {
        if domains.is_empty() {
            return Err(Error::InvalidArgument(
                "flag world needs at least one domain".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for d in &domains {
            if !(d.area > 0.0) || !d.area.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "domain '{}' has nonpositive area {}",
                    d.id, d.area
                )));
            }
            if !seen.insert(d.id.clone()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate domain id '{}'",
                    d.id
                )));
            }
        }
        Ok(FlagWorldSpec { domains })
    }

    /// Single-domain convenience constructor.
    pub fn single(id: &str, area: f64) -> Result<Self> {
        FlagWorldSpec::new(vec![Domain {
            id: id.to_string(),
            area,
        }])
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn get(&self, id: &str) -> Option<&Domain> {
        self.domains.iter().find(|d| d.id == id)
    }

    pub fn max_area(&self) -> f64 {
        self.domains.iter().map(|d| d.area).fold(0.0, f64::max)
    }
}

/// Partition of (some) domains into sub-areas.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementPlan {
    parts: BTreeMap<String, Vec<f64>>,
}

impl RefinementPlan {
    pub fn new(world: &FlagWorldSpec, parts: BTreeMap<String, Vec<f64>>) -> Result<Self> {
        for (id, sub) in &parts {
            let parent = world.get(id).ok_or_else(|| {
                Error::InvalidArgument(format!("refined id '{id}' not in the flag world"))
            })?;
            if sub.is_empty() || sub.iter().any(|&a| !(a > 0.0)) {
                return Err(Error::InvalidArgument(format!(
                    "refinement of '{id}' must consist of positive sub-areas"
                )));
            }
            let sum: f64 = sub.iter().sum();
            if (sum - parent.area).abs() > AREA_SUM_RELATIVE_TOL * parent.area {
                return Err(Error::InvalidArgument(format!(
                    "sub-areas of '{id}' sum to {sum}, parent area is {}",
                    parent.area
                )));
            }
        }
        Ok(RefinementPlan { parts })
    }

    pub fn parts(&self) -> &BTreeMap<String, Vec<f64>> {
        &self.parts
    }

    /// Sub-areas of a domain; an unrefined domain is its own single part.
    pub fn parts_of<'a>(&'a self, domain: &'a Domain) -> std::borrow::Cow<'a, [f64]> {
        match self.parts.get(&domain.id) {
            Some(sub) => std::borrow::Cow::Borrowed(sub.as_slice()),
            None => std::borrow::Cow::Owned(vec![domain.area]),
        }
    }

    /// Largest sub-area over the whole world.
    pub fn mesh(&self, world: &FlagWorldSpec) -> f64 {
        world
            .domains()
            .iter()
            .flat_map(|d| self.parts_of(d).into_owned())
            .fold(0.0, f64::max)
    }
}

/// Each domain's flag carries one irrep label; the target label must be
/// contained in the tensor product of the assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopNetworkSpec {
    pub assignments: BTreeMap<String, Vec<i64>>,
    pub target: Vec<i64>,
}

impl LoopNetworkSpec {
    /// Assignment irreps in the world's domain order, plus the target.
    pub fn resolve(&self, group: &GroupSpec, world: &FlagWorldSpec) -> Result<(Vec<Irrep>, Irrep)> {
        if self.assignments.len() != world.domains().len() {
            return Err(Error::InvalidArgument(format!(
                "network assigns {} labels but the world has {} domains",
                self.assignments.len(),
                world.domains().len()
            )));
        }
        let mut reps = Vec::with_capacity(world.domains().len());
        for d in world.domains() {
            let label = self.assignments.get(&d.id).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "network misses an assignment for domain '{}'",
                    d.id
                ))
            })?;
            reps.push(Irrep::new(group, label.clone())?);
        }
        let target = Irrep::new(group, self.target.clone())?;
        Ok((reps, target))
    }

    /// Tensor multiplicity of the target in the assignments.
    pub fn multiplicity(&self, group: &GroupSpec, world: &FlagWorldSpec) -> Result<u64> {
        let (reps, target) = self.resolve(group, world)?;
        tensor_multiplicity(group, &reps, &target)
    }
}

/// Parsed lattice description file.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFile {
    pub group: GroupSpec,
    pub coupling: f64,
    pub world: FlagWorldSpec,
    pub refinement: Option<RefinementPlan>,
    pub networks: Vec<LoopNetworkSpec>,
}

/// Parse and validate a lattice description.
///
/// All violations are collected and reported together, each with a
/// JSON-pointer path and a machine-readable code. In strict mode unknown
/// fields are rejected (`lenient` disables that check only).
pub fn parse_lattice_file(text: &[u8], lenient: bool) -> Result<LatticeFile> {
    let mut issues = Vec::new();
    let value: Value = match serde_json::from_slice(text) {
        Ok(v) => v,
        Err(e) => {
            return Err(Error::Lattice(vec![Issue {
                code: IssueCode::Syntax,
                path: format!("(line {}, column {})", e.line(), e.column()),
                message: format!("invalid JSON: {e}"),
            }]))
        }
    };

    let root = match value.as_object() {
        Some(o) => o,
        None => {
            return Err(Error::Lattice(vec![issue(
                IssueCode::Syntax,
                "",
                "top level must be a JSON object",
            )]))
        }
    };

    if !lenient {
        reject_unknown_fields(
            root,
            &["group", "coupling", "domains", "refinement", "networks"],
            "",
            &mut issues,
        );
    }

    // group
    let group = match root.get("group") {
        Some(Value::String(s)) => match GroupSpec::parse(s) {
            Ok(g) => Some(g),
            Err(e) => {
                issues.push(issue(IssueCode::Group, "/group", &e.to_string()));
                None
            }
        },
        Some(_) => {
            issues.push(issue(IssueCode::Syntax, "/group", "must be a string"));
            None
        }
        None => {
            issues.push(issue(IssueCode::Syntax, "/group", "missing required field"));
            None
        }
    };

    // coupling
    let coupling = match root.get("coupling") {
        Some(v) => match v.as_f64() {
            Some(c) if c > 0.0 && c.is_finite() => Some(c),
            Some(c) => {
                issues.push(issue(
                    IssueCode::Syntax,
                    "/coupling",
                    &format!("must be positive, got {c}"),
                ));
                None
            }
            None => {
                issues.push(issue(IssueCode::Syntax, "/coupling", "must be a number"));
                None
            }
        },
        None => {
            issues.push(issue(
                IssueCode::Syntax,
                "/coupling",
                "missing required field",
            ));
            None
        }
    };

    // domains
    let mut domains = Vec::new();
    match root.get("domains") {
        Some(Value::Array(items)) if !items.is_empty() => {
            let mut ids = BTreeSet::new();
            for (i, item) in items.iter().enumerate() {
                let path = format!("/domains/{i}");
                let Some(obj) = item.as_object() else {
                    issues.push(issue(IssueCode::Syntax, &path, "must be an object"));
                    continue;
                };
                if !lenient {
                    reject_unknown_fields(obj, &["id", "area"], &path, &mut issues);
                }
                let id = match obj.get("id").and_then(Value::as_str) {
                    Some(s) => s.to_string(),
                    None => {
                        issues.push(issue(
                            IssueCode::Syntax,
                            &(path.clone() + "/id"),
                            "missing or not a string",
                        ));
                        continue;
                    }
                };
                if !ids.insert(id.clone()) {
                    issues.push(issue(
                        IssueCode::Syntax,
                        &(path.clone() + "/id"),
                        &format!("duplicate domain id '{id}'"),
                    ));
                    continue;
                }
                match obj.get("area").and_then(Value::as_f64) {
                    Some(a) if a > 0.0 && a.is_finite() => domains.push(Domain { id, area: a }),
                    Some(a) => issues.push(issue(
                        IssueCode::Area,
                        &(path + "/area"),
                        &format!("area must be positive, got {a}"),
                    )),
                    None => issues.push(issue(
                        IssueCode::Syntax,
                        &(path + "/area"),
                        "missing or not a number",
                    )),
                }
            }
        }
        Some(Value::Array(_)) => {
            issues.push(issue(IssueCode::Syntax, "/domains", "must be non-empty"));
        }
        Some(_) => issues.push(issue(IssueCode::Syntax, "/domains", "must be an array")),
        None => issues.push(issue(IssueCode::Syntax, "/domains", "missing required field")),
    }

    let world = FlagWorldSpec::new(domains.clone()).ok();

    // refinement (optional)
    let mut refinement_parts: Option<BTreeMap<String, Vec<f64>>> = None;
    if let Some(v) = root.get("refinement") {
        match v.as_object() {
            Some(obj) => {
                let mut parts = BTreeMap::new();
                for (id, sub) in obj {
                    let path = format!("/refinement/{id}");
                    let parent = world.as_ref().and_then(|w| w.get(id));
                    if parent.is_none() {
                        issues.push(issue(
                            IssueCode::Syntax,
                            &path,
                            &format!("refined id '{id}' is not a domain"),
                        ));
                        continue;
                    }
                    let Some(arr) = sub.as_array() else {
                        issues.push(issue(
                            IssueCode::Syntax,
                            &path,
                            "must be an array of numbers",
                        ));
                        continue;
                    };
                    let mut areas = Vec::new();
                    let mut ok = true;
                    for (j, x) in arr.iter().enumerate() {
                        match x.as_f64() {
                            Some(a) if a > 0.0 && a.is_finite() => areas.push(a),
                            _ => {
                                issues.push(issue(
                                    IssueCode::Area,
                                    &format!("{path}/{j}"),
                                    "sub-area must be a positive number",
                                ));
                                ok = false;
                            }
                        }
                    }
                    if !ok || areas.is_empty() {
                        continue;
                    }
                    let parent = parent.unwrap();
                    let sum: f64 = areas.iter().sum();
                    if (sum - parent.area).abs() > AREA_SUM_RELATIVE_TOL * parent.area {
                        issues.push(issue(
                            IssueCode::Sum,
                            &path,
                            &format!("sub-areas sum to {sum}, parent area is {}", parent.area),
                        ));
                        continue;
                    }
                    parts.insert(id.clone(), areas);
                }
                refinement_parts = Some(parts);
            }
            None => issues.push(issue(IssueCode::Syntax, "/refinement", "must be an object")),
        }
    }

    // networks
    let mut networks = Vec::new();
    match root.get("networks") {
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let path = format!("/networks/{i}");
                let Some(obj) = item.as_object() else {
                    issues.push(issue(IssueCode::Syntax, &path, "must be an object"));
                    continue;
                };
                if !lenient {
                    reject_unknown_fields(obj, &["assignments", "target"], &path, &mut issues);
                }
                let mut assignments = BTreeMap::new();
                let mut ok = true;
                match obj.get("assignments").and_then(Value::as_object) {
                    Some(m) => {
                        for (id, lab) in m {
                            if world.as_ref().map(|w| w.get(id).is_none()).unwrap_or(false) {
                                issues.push(issue(
                                    IssueCode::Syntax,
                                    &format!("{path}/assignments/{id}"),
                                    &format!("'{id}' is not a domain"),
                                ));
                                ok = false;
                                continue;
                            }
                            match parse_label(lab) {
                                Some(l) => {
                                    assignments.insert(id.clone(), l);
                                }
                                None => {
                                    issues.push(issue(
                                        IssueCode::Syntax,
                                        &format!("{path}/assignments/{id}"),
                                        "label must be an array of integers",
                                    ));
                                    ok = false;
                                }
                            }
                        }
                    }
                    None => {
                        issues.push(issue(
                            IssueCode::Syntax,
                            &(path.clone() + "/assignments"),
                            "missing or not an object",
                        ));
                        ok = false;
                    }
                }
                let target = match obj.get("target").map(parse_label) {
                    Some(Some(l)) => l,
                    _ => {
                        issues.push(issue(
                            IssueCode::Syntax,
                            &(path.clone() + "/target"),
                            "missing or not an array of integers",
                        ));
                        ok = false;
                        Vec::new()
                    }
                };
                if !ok {
                    continue;
                }
                let network = LoopNetworkSpec {
                    assignments,
                    target,
                };
                if let (Some(g), Some(w)) = (&group, &world) {
                    match network.multiplicity(g, w) {
                        Ok(0) => {
                            issues.push(issue(
                                IssueCode::Mult,
                                &path,
                                "target has multiplicity zero in the tensor product",
                            ));
                            continue;
                        }
                        Ok(_) => {}
                        Err(Error::BadLabel { reason, .. }) => {
                            issues.push(issue(IssueCode::Group, &path, &reason));
                            continue;
                        }
                        Err(e) => {
                            issues.push(issue(IssueCode::Syntax, &path, &e.to_string()));
                            continue;
                        }
                    }
                }
                networks.push(network);
            }
        }
        Some(_) => issues.push(issue(IssueCode::Syntax, "/networks", "must be an array")),
        None => issues.push(issue(
            IssueCode::Syntax,
            "/networks",
            "missing required field",
        )),
    }

    if !issues.is_empty() {
        return Err(Error::Lattice(issues));
    }
    let world = world.expect("validated above");
    let refinement = match refinement_parts {
        Some(parts) if !parts.is_empty() => Some(RefinementPlan::new(&world, parts)?),
        _ => None,
    };
    Ok(LatticeFile {
        group: group.expect("validated above"),
        coupling: coupling.expect("validated above"),
        world,
        refinement,
        networks,
    })
}

fn parse_label(v: &Value) -> Option<Vec<i64>> {
    v.as_array()?
        .iter()
        .map(Value::as_i64)
        .collect::<Option<Vec<i64>>>()
}

fn issue(code: IssueCode, path: &str, message: &str) -> Issue {
    Issue {
        code,
        path: path.to_string(),
        message: message.to_string(),
    }
}

fn reject_unknown_fields(
    obj: &Map<String, Value>,
    known: &[&str],
    path: &str,
    issues: &mut Vec<Issue>,
) {
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            issues.push(issue(
                IssueCode::Syntax,
                &format!("{path}/{key}"),
                "unknown field (use --lenient to ignore)",
            ));
        }
    }
}

/// Canonical JSON serialization; `parse(serialize(x))` is structurally
/// equal to `x`.
pub fn serialize_lattice_file(file: &LatticeFile) -> String {
    let domains: Vec<Value> = file
        .world
        .domains()
        .iter()
        .map(|d| json!({"id": d.id, "area": d.area}))
        .collect();
    let networks: Vec<Value> = file
        .networks
        .iter()
        .map(|n| {
            let assignments: Map<String, Value> = n
                .assignments
                .iter()
                .map(|(k, v)| (k.clone(), json!(v)))
                .collect();
            json!({"assignments": assignments, "target": n.target})
        })
        .collect();
    let mut root = Map::new();
    root.insert("group".into(), json!(file.group.canonical_name()));
    root.insert("coupling".into(), json!(file.coupling));
    root.insert("domains".into(), json!(domains));
    if let Some(plan) = &file.refinement {
        let parts: Map<String, Value> = plan
            .parts()
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        root.insert("refinement".into(), json!(parts));
    }
    root.insert("networks".into(), json!(networks));
    serde_json::to_string_pretty(&Value::Object(root)).expect("serialization cannot fail")
}

/// Split every domain into k equal sub-areas (the last takes the exact
/// remainder so the stored sum equals the parent area).
pub fn uniform_refinement(world: &FlagWorldSpec, k: u32) -> RefinementPlan {
    assert!(k >= 1);
    let parts = world
        .domains()
        .iter()
        .map(|d| (d.id.clone(), split_exact(d.area, k as usize)))
        .collect();
    RefinementPlan { parts }
}

fn split_exact(area: f64, k: usize) -> Vec<f64> {
    let part = area / k as f64;
    let mut v = vec![part; k];
    // Remainder against the sequential partial sum, so Σv == area exactly.
    let head: f64 = v[..k - 1].iter().sum();
    v[k - 1] = area - head;
    v
}

/// Recursively split each domain at uniform-random proportions in [0.3, 0.7]
/// until every part is ≤ mesh; the second half of each split takes the exact
/// remainder, so sub-areas sum exactly to the parent.
pub fn random_refinement<R: Rng + ?Sized>(
    world: &FlagWorldSpec,
    mesh: f64,
    rng: &mut R,
) -> RefinementPlan {
    assert!(mesh > 0.0);
    let parts = world
        .domains()
        .iter()
        .map(|d| {
            let mut out = Vec::new();
            split_random(d.area, mesh, rng, &mut out);
            (d.id.clone(), out)
        })
        .collect();
    RefinementPlan { parts }
}

fn split_random<R: Rng + ?Sized>(area: f64, mesh: f64, rng: &mut R, out: &mut Vec<f64>) {
    if area <= mesh {
        out.push(area);
        return;
    }
    let p: f64 = rng.random_range(0.3..0.7);
    let left = p * area;
    let right = area - left;
    split_random(left, mesh, rng, out);
    split_random(right, mesh, rng, out);
}
