//! Bundle file format: UTF-8 JSON with scalar strings.
//!
//! Top-level keys: "group", "g_group", "simples", "fusion", "F", "l", "r",
//! "sigma", "mu", "R", "theta", "dual", "b", "d", "c_lax", "h_lax",
//! "pairing", "E", "rho". Matrices are flat row-major arrays of scalar
//! strings; compound keys are comma-joined names. Serialization is
//! canonical: sorted keys, minimal-conductor scalars, identity mu entries
//! omitted.

use super::*;
use crate::cat::SimpleObject;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct GroupFile {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SimpleFile {
    name: String,
    grade: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BundleFile {
    group: GroupFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_group: Option<GroupFile>,
    simples: Vec<SimpleFile>,
    fusion: Vec<(String, String, String, usize)>,
    #[serde(rename = "F")]
    f: BTreeMap<String, Vec<String>>,
    l: BTreeMap<String, String>,
    r: BTreeMap<String, String>,
    sigma: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    mu: BTreeMap<String, Vec<String>>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    braiding: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_lax: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h_lax: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairing: Option<BTreeMap<String, usize>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    e: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<BTreeMap<String, String>>,
}

impl Default for GroupFile {
    fn default() -> Self {
        GroupFile { names: vec!["e".into()], mul: vec![vec![0]] }
    }
}

fn split_key<const N: usize>(key: &str) -> Result<[&str; N], BundleError> {
    let parts: Vec<&str> = key.split(',').collect();
    parts
        .try_into()
        .map_err(|_| BundleError::Format(format!("key {key:?} must have exactly {N} comma-separated parts")))
}

fn parse_scalar<S: Scalar>(s: &str) -> Result<S, BundleError> {
    let exact: crate::scalar::Cyclotomic = s.parse()?;
    Ok(S::from_exact(&exact))
}

fn parse_mat<S: Scalar>(rows: usize, cols: usize, data: &[String], what: &str) -> Result<Mat<S>, BundleError> {
    if data.len() != rows * cols {
        return Err(BundleError::Format(format!(
            "{what}: expected {}x{}={} entries, got {}",
            rows,
            cols,
            rows * cols,
            data.len()
        )));
    }
    let entries = data.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<S>, _>>()?;
    Ok(Mat::from_flat(rows, cols, entries)?)
}

/// Parse and validate a bundle from JSON text.
pub fn load_bundle<S: Scalar>(text: &str) -> Result<StructureBundle<S>, BundleError> {
    let raw: BundleFile = serde_json::from_str(text).map_err(|e| BundleError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let bundle = bundle_from_raw(raw)?;
    let report = validate_bundle(&bundle);
    if let Some(fail) = report.first_failure() {
        return Err(BundleError::Validation(format!("{}: {}", fail.id, fail.detail)));
    }
    Ok(bundle)
}

fn bundle_from_raw<S: Scalar>(raw: BundleFile) -> Result<StructureBundle<S>, BundleError> {
    let pi = GroupTable::new(raw.group.mul, Some(raw.group.names))?;
    for n in pi.names() {
        if n.contains(',') || n.contains(char::is_whitespace) || n.is_empty() {
            return Err(BundleError::Format(format!("group element name {n:?} is not allowed")));
        }
    }
    let simples: Vec<SimpleObject> = raw
        .simples
        .iter()
        .map(|s| {
            if s.name.contains(',') || s.name.contains(char::is_whitespace) || s.name.is_empty() {
                return Err(BundleError::Format(format!("simple name {:?} is not allowed", s.name)));
            }
            Ok(SimpleObject { name: s.name.clone(), grade: pi.by_name(&s.grade)? })
        })
        .collect::<Result<_, BundleError>>()?;

    let count = simples.len();
    let simple_names: Vec<String> = simples.iter().map(|s| s.name.clone()).collect();
    let lookup = move |name: &str| -> Result<SimpleId, BundleError> {
        simple_names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| BundleError::Format(format!("unknown simple {name:?}")))
    };

    let mut fusion = FusionRule::zero(count);
    for (a, b, c, m) in &raw.fusion {
        fusion.set(lookup(a)?, lookup(b)?, lookup(c)?, *m);
    }

    // the unit is the unique simple fusing as a strict two-sided identity
    let unit = (0..count)
        .find(|&u| {
            (0..count).all(|a| {
                (0..count).all(|c| {
                    fusion.get(u, a, c) == usize::from(a == c)
                        && fusion.get(a, u, c) == usize::from(a == c)
                })
            })
        })
        .ok_or_else(|| BundleError::Format("fusion rules have no unit simple".into()))?;
    let cat = GradedCategory::new(pi.clone(), simples, unit)?;

    let paths = |a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId| -> (usize, usize) {
        let pl = (0..count).map(|e| fusion.get(a, b, e) * fusion.get(e, c, d)).sum();
        let pr = (0..count).map(|f| fusion.get(b, c, f) * fusion.get(a, f, d)).sum();
        (pl, pr)
    };

    let mut f = BTreeMap::new();
    for (key, data) in &raw.f {
        let [a, b, c, d] = split_key::<4>(key)?;
        let (a, b, c, d) = (lookup(a)?, lookup(b)?, lookup(c)?, lookup(d)?);
        let (pl, pr) = paths(a, b, c, d);
        f.insert((a, b, c, d), parse_mat(pr, pl, data, &format!("F[{key}]"))?);
    }
    let mut l = vec![S::zero(); count];
    let mut r = vec![S::zero(); count];
    for (key, val) in &raw.l {
        l[lookup(key)?] = parse_scalar(val)?;
    }
    for (key, val) in &raw.r {
        r[lookup(key)?] = parse_scalar(val)?;
    }
    let assoc = AssociatorData { f, l, r };

    let mut sigma = Vec::with_capacity(pi.order());
    for g in pi.elements() {
        let images = raw
            .sigma
            .get(pi.name(g))
            .ok_or_else(|| BundleError::Format(format!("sigma missing for group element {}", pi.name(g))))?;
        if images.len() != count {
            return Err(BundleError::Format(format!("sigma[{}] has wrong length", pi.name(g))));
        }
        sigma.push(images.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?);
    }
    let mut mu = BTreeMap::new();
    for (key, data) in &raw.mu {
        let [g, a, b, c] = split_key::<4>(key)?;
        let (g, a, b, c) = (pi.by_name(g)?, lookup(a)?, lookup(b)?, lookup(c)?);
        let n = fusion.get(a, b, c);
        mu.insert((g, a, b, c), parse_mat(n, n, data, &format!("mu[{key}]"))?);
    }
    let crossing = CrossingData { sigma, mu };

    let braiding = match &raw.braiding {
        None => None,
        Some(table) => {
            let mut rmap = BTreeMap::new();
            for (key, data) in table {
                let [a, b, c] = split_key::<3>(key)?;
                let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(c)?);
                let alpha = cat.grade(a);
                let rows = fusion.get(crossing.sigma[alpha][b], a, c);
                let cols = fusion.get(a, b, c);
                rmap.insert((a, b, c), parse_mat(rows, cols, data, &format!("R[{key}]"))?);
            }
            Some(BraidingData { r: rmap })
        }
    };

    let twist = match &raw.theta {
        None => None,
        Some(table) => {
            let mut theta = vec![S::zero(); count];
            for (key, val) in table {
                theta[lookup(key)?] = parse_scalar(val)?;
            }
            Some(TwistData { theta })
        }
    };

    let duality = match &raw.dual {
        None => None,
        Some(table) => {
            let mut dual = vec![usize::MAX; count];
            for (key, val) in table {
                dual[lookup(key)?] = lookup(val)?;
            }
            if let Some(a) = dual.iter().position(|&x| x == usize::MAX) {
                return Err(BundleError::Format(format!(
                    "dual table misses simple {:?}",
                    cat.simple_name(a)
                )));
            }
            let parse_vecs = |m: &Option<BTreeMap<String, Vec<String>>>, what: &str| {
                let mut out = BTreeMap::new();
                if let Some(m) = m {
                    for (key, data) in m {
                        let a = lookup(key)?;
                        let v = data.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<S>, _>>()?;
                        out.insert(a, v);
                    }
                } else {
                    return Err(BundleError::Format(format!("duality requires section {what:?}")));
                }
                Ok::<_, BundleError>(out)
            };
            let b_map = parse_vecs(&raw.b, "b")?;
            let d_map = parse_vecs(&raw.d, "d")?;
            let mut c_lax = BTreeMap::new();
            if let Some(m) = &raw.c_lax {
                for (key, val) in m {
                    let [g, a] = split_key::<2>(key)?;
                    c_lax.insert((pi.by_name(g)?, lookup(a)?), parse_scalar(val)?);
                }
            }
            let mut h_lax = BTreeMap::new();
            if let Some(m) = &raw.h_lax {
                let gg = raw
                    .g_group
                    .as_ref()
                    .ok_or_else(|| BundleError::Format("h_lax requires g_group".into()))?;
                let gt = GroupTable::new(gg.mul.clone(), Some(gg.names.clone()))?;
                for (key, val) in m {
                    let [g, a] = split_key::<2>(key)?;
                    h_lax.insert((gt.by_name(g)?, lookup(a)?), parse_scalar(val)?);
                }
            }
            Some(DualityData { dual, b: b_map, d: d_map, c_lax, h_lax })
        }
    };

    let forms = match (&raw.pairing, &raw.e) {
        (None, None) => None,
        (Some(p), Some(e)) => {
            let parse_dims = |m: &BTreeMap<String, usize>| {
                m.iter()
                    .map(|(key, &dim)| {
                        let [a, b] = split_key::<2>(key)?;
                        Ok(((lookup(a)?, lookup(b)?), dim))
                    })
                    .collect::<Result<BTreeMap<_, _>, BundleError>>()
            };
            Some(FormData { pairing: parse_dims(p)?, e: parse_dims(e)? })
        }
        _ => return Err(BundleError::Format("pairing and E must both be present or absent".into())),
    };

    let g_action = match &raw.rho {
        None => None,
        Some(table) => {
            let gg = raw
                .g_group
                .as_ref()
                .ok_or_else(|| BundleError::Format("rho requires g_group".into()))?;
            let group = GroupTable::new(gg.mul.clone(), Some(gg.names.clone()))?;
            let mut rho_unit = vec![usize::MAX; group.order()];
            for (key, val) in table {
                rho_unit[group.by_name(key)?] = lookup(val)?;
            }
            if let Some(g) = rho_unit.iter().position(|&x| x == usize::MAX) {
                return Err(BundleError::Format(format!(
                    "rho table misses group element {:?}",
                    group.name(g)
                )));
            }
            Some(GActionData { group, rho_unit })
        }
    };

    Ok(StructureBundle { cat, fusion, assoc, crossing, braiding, twist, duality, forms, g_action })
}

/// Canonical JSON text; `load_bundle . serialize_bundle` is the identity.
pub fn serialize_bundle<S: Scalar>(b: &StructureBundle<S>) -> Result<String, BundleError> {
    let pi = b.pi();
    let count = b.cat.simple_count();
    let sname = |a: SimpleId| b.cat.simple_name(a).to_string();
    let scalar_str = |s: &S| s.to_exact_string().map_err(BundleError::from);
    let mat_strs = |m: &Mat<S>| -> Result<Vec<String>, BundleError> {
        m.entries().iter().map(scalar_str).collect()
    };

    let mut fusion = Vec::new();
    for a in 0..count {
        for x in 0..count {
            for c in 0..count {
                let m = b.n(a, x, c);
                if m > 0 {
                    fusion.push((sname(a), sname(x), sname(c), m));
                }
            }
        }
    }

    let mut f = BTreeMap::new();
    for ((a, x, c, d), m) in &b.assoc.f {
        f.insert(
            format!("{},{},{},{}", sname(*a), sname(*x), sname(*c), sname(*d)),
            mat_strs(m)?,
        );
    }
    let l = (0..count)
        .map(|a| Ok((sname(a), scalar_str(&b.assoc.l[a])?)))
        .collect::<Result<BTreeMap<_, _>, BundleError>>()?;
    let r = (0..count)
        .map(|a| Ok((sname(a), scalar_str(&b.assoc.r[a])?)))
        .collect::<Result<BTreeMap<_, _>, BundleError>>()?;

    let sigma = pi
        .elements()
        .map(|g| {
            (
                pi.name(g).to_string(),
                (0..count).map(|a| sname(b.sigma(g, a))).collect::<Vec<_>>(),
            )
        })
        .collect();

    let mut mu = BTreeMap::new();
    for ((g, a, x, c), m) in &b.crossing.mu {
        if m.is_identity() {
            continue;
        }
        mu.insert(
            format!("{},{},{},{}", pi.name(*g), sname(*a), sname(*x), sname(*c)),
            mat_strs(m)?,
        );
    }

    let braiding = match &b.braiding {
        None => None,
        Some(data) => {
            let mut out = BTreeMap::new();
            for ((a, x, c), m) in &data.r {
                if m.rows == 0 || m.cols == 0 {
                    continue;
                }
                out.insert(format!("{},{},{}", sname(*a), sname(*x), sname(*c)), mat_strs(m)?);
            }
            Some(out)
        }
    };

    let theta = match &b.twist {
        None => None,
        Some(t) => Some(
            (0..count)
                .map(|a| Ok((sname(a), scalar_str(&t.theta[a])?)))
                .collect::<Result<BTreeMap<_, _>, BundleError>>()?,
        ),
    };

    let (dual, b_map, d_map, c_lax, h_lax) = match &b.duality {
        None => (None, None, None, None, None),
        Some(du) => {
            let dual = (0..count).map(|a| (sname(a), sname(du.dual[a]))).collect();
            let vecs = |m: &BTreeMap<SimpleId, Vec<S>>| -> Result<BTreeMap<String, Vec<String>>, BundleError> {
                m.iter()
                    .map(|(a, v)| Ok((sname(*a), v.iter().map(scalar_str).collect::<Result<Vec<_>, _>>()?)))
                    .collect()
            };
            let c_lax = du
                .c_lax
                .iter()
                .map(|((g, a), s)| Ok((format!("{},{}", pi.name(*g), sname(*a)), scalar_str(s)?)))
                .collect::<Result<BTreeMap<_, _>, BundleError>>()?;
            let h_lax = match &b.g_action {
                Some(ga) => du
                    .h_lax
                    .iter()
                    .map(|((g, a), s)| Ok((format!("{},{}", ga.group.name(*g), sname(*a)), scalar_str(s)?)))
                    .collect::<Result<BTreeMap<_, _>, BundleError>>()?,
                None => BTreeMap::new(),
            };
            (
                Some(dual),
                Some(vecs(&du.b)?),
                Some(vecs(&du.d)?),
                if c_lax.is_empty() { None } else { Some(c_lax) },
                if h_lax.is_empty() { None } else { Some(h_lax) },
            )
        }
    };

    let (pairing, e) = match &b.forms {
        None => (None, None),
        Some(forms) => {
            let dims = |m: &BTreeMap<(SimpleId, SimpleId), usize>| {
                m.iter()
                    .filter(|(_, &dim)| dim > 0)
                    .map(|((a, x), &dim)| (format!("{},{}", sname(*a), sname(*x)), dim))
                    .collect::<BTreeMap<_, _>>()
            };
            (Some(dims(&forms.pairing)), Some(dims(&forms.e)))
        }
    };

    let (g_group, rho) = match &b.g_action {
        None => (None, None),
        Some(ga) => (
            Some(GroupFile {
                names: ga.group.names().to_vec(),
                mul: ga.group.mul_table().to_vec(),
            }),
            Some(
                ga.group
                    .elements()
                    .map(|g| (ga.group.name(g).to_string(), sname(ga.rho_unit[g])))
                    .collect(),
            ),
        ),
    };

    let raw = BundleFile {
        group: GroupFile { names: pi.names().to_vec(), mul: pi.mul_table().to_vec() },
        g_group,
        simples: (0..count)
            .map(|a| SimpleFile { name: sname(a), grade: pi.name(b.cat.grade(a)).to_string() })
            .collect(),
        fusion,
        f,
        l,
        r,
        sigma,
        mu,
        braiding,
        theta,
        dual,
        b: b_map,
        d: d_map,
        c_lax,
        h_lax,
        pairing,
        e,
        rho,
    };
    let mut text = serde_json::to_string_pretty(&raw)
        .map_err(|e| BundleError::Format(format!("serialize: {e}")))?;
    text.push('\n');
    Ok(text)
}
