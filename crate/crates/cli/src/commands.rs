use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use pregal_core::correspondence::{correspondence_table, cross_correspondence, family};
use pregal_core::extension::{analyze, hopf_regular_subgroups, minimal_fields, ExtensionModel};
use pregal_core::fixtures;
use pregal_core::geometric::{field_of_moduli_group, nor_gcen_out, specialize, twist, ArithmeticModel};
use pregal_core::permgroup::catalog;
use pregal_core::permgroup::{complements, normal_complements, PermGroup, Perm};
use pregal_core::rigidity::{
    admissible_exponents, is_weakly_rational, rigidity_pipeline, tuple_solutions, ClassTuple, Embedding,
    GaloisInput, PipelineFlags,
};
use pregal_core::Bounds;

use crate::args::*;
use crate::error::CliError;
use crate::groupfile::{parse_cycles, parse_group_file, serialize, CycleError, GroupSpec};
use crate::report;

/// Inputs read while running a command, folded into the report digest.
#[derive(Default)]
pub struct Inputs(pub Vec<(String, Vec<u8>)>);

struct Loaded {
    group: PermGroup,
    spec: Option<GroupSpec>,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Io {
            path: path.to_string(),
            message: "file is not UTF-8".into(),
        })?;
        self.0.push((format!("file:{path}"), bytes));
        Ok(text)
    }

    /// A group file if `src` names an existing file, otherwise a catalog group.
    fn group(&mut self, src: &str, bounds: &Bounds) -> Result<Loaded, CliError> {
        if Path::new(src).is_file() {
            let spec = parse_group_file(&self.read(src)?)?;
            let group = spec.group(bounds)?;
            return Ok(Loaded {
                group,
                spec: Some(spec),
            });
        }
        let group = catalog::by_name(src).ok_or_else(|| {
            CliError::Usage(format!("'{src}' is neither a readable file nor a catalog group"))
        })?;
        if group.order() > bounds.max_elements {
            return Err(pregal_core::Error::BoundExceeded {
                what: "group elements",
                needed: group.order() as u64,
                limit: bounds.max_elements as u64,
            }
            .into());
        }
        self.0.push((format!("catalog:{src}"), Vec::new()));
        Ok(Loaded { group, spec: None })
    }
}

fn parse_perm_arg(text: &str, degree: usize, what: &str) -> Result<Perm, CliError> {
    parse_cycles(text, degree).map_err(|e| {
        let detail = match e {
            CycleError::Syntax { offset, message } => format!("at offset {offset}: {message}"),
            CycleError::OutOfRange { point, .. } => format!("point {point} outside 1..{degree}"),
            CycleError::Repeated { point, .. } => format!("point {point} repeated"),
        };
        CliError::Usage(format!("{what} '{}': {detail}", text.trim()))
    })
}

fn model(args: &ModelArgs, inputs: &mut Inputs, bounds: &Bounds) -> Result<ExtensionModel, CliError> {
    let Loaded { group, spec } = inputs.group(&args.gamma, bounds)?;
    let d = group.degree();
    let gens: Vec<Perm> = if let Some(name) = &args.sub {
        let spec = spec
            .as_ref()
            .ok_or_else(|| CliError::Usage("--sub needs a group file with subgroup blocks".into()))?;
        spec.subgroup_generators(name)
            .ok_or_else(|| CliError::Usage(format!("no subgroup block named '{name}'")))?
            .to_vec()
    } else if let Some(list) = &args.sub_gens {
        list.split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_perm_arg(s, d, "generator"))
            .collect::<Result<_, _>>()?
    } else {
        let p = args.stab.unwrap_or(1);
        if p == 0 || p > d {
            return Err(CliError::Usage(format!("--stab {p} outside 1..{d}")));
        }
        return Ok(ExtensionModel::from_point_stabilizer(group, p - 1)?);
    };
    if let Some(bad) = gens.iter().find(|g| !group.contains(g)) {
        return Err(pregal_core::Error::NotSubgroup(format!("{} is not in Γ", bad.to_cycle_string(1))).into());
    }
    let sub = group.subgroup(&gens)?;
    Ok(ExtensionModel::new(group, sub)?)
}

fn model_json(m: &ExtensionModel) -> Value {
    json!({
        "gamma": report::group(&m.gamma),
        "gamma_e": report::group(&m.gamma_e),
        "degree": m.degree(),
    })
}

fn analyze_cmd(args: &ModelArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let m = model(args, inputs, b)?;
    let r = analyze(&m, b)?;
    let mut pot: Vec<&str> = r.potential_groups.iter().map(|c| c.name.as_str()).collect();
    let mut pre: Vec<&str> = r.pre_galois_groups.iter().map(|c| c.name.as_str()).collect();
    pot.sort_unstable();
    pre.sort_unstable();
    let classes = |cs: &[pregal_core::extension::IsoClass]| -> Value {
        cs.iter()
            .map(|c| json!({"type": c.name, "count": c.count, "representative": report::group(&c.representative)}))
            .collect()
    };
    let fields: Vec<Value> = minimal_fields(&m, b)?
        .iter()
        .map(|f| json!({"field_degree": f.field_degree, "normal": f.normal, "complement": report::group(&f.complement)}))
        .collect();
    Ok(json!({
        "model": model_json(&m),
        "complement_count": r.complements.len(),
        "normal_complement_count": r.normal_complements.len(),
        "potential_groups": pot,
        "pre_galois_groups": pre,
        "potential_classes": classes(&r.potential_groups),
        "pre_galois_classes": classes(&r.pre_galois_groups),
        "is_potentially_galois": r.is_potentially_galois,
        "is_pre_galois": r.is_pre_galois,
        "minimal_fields": fields,
    }))
}

fn complements_cmd(args: &ComplementArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let m = model(&args.model, inputs, b)?;
    let cs = if args.normal {
        normal_complements(&m.gamma, &m.gamma_e, b)?
    } else {
        complements(&m.gamma, &m.gamma_e, b)?
    };
    let list: Vec<Value> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"index": i + 1, "normal": m.gamma.is_normal(c), "group": report::group(c)}))
        .collect();
    Ok(json!({
        "model": model_json(&m),
        "normal_only": args.normal,
        "count": cs.len(),
        "complements": list,
    }))
}

fn correspondence_cmd(args: &CorrespondenceArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let m = model(&args.model, inputs, b)?;
    let cs = complements(&m.gamma, &m.gamma_e, b)?;
    let chosen: Vec<usize> = match args.complement {
        Some(k) if k == 0 || k > cs.len() => {
            return Err(CliError::Usage(format!("--complement {k} outside 1..{}", cs.len())))
        }
        Some(k) => vec![k - 1],
        None => (0..cs.len()).collect(),
    };
    let mut tables = Vec::new();
    for &i in &chosen {
        let g = &cs[i];
        let rows: Vec<Value> = correspondence_table(&m, g, b)?
            .iter()
            .map(|r| {
                json!({
                    "h": report::group(&r.h),
                    "h_gamma_e": report::group(&r.h_gamma_e),
                    "subdegree": r.subdegree,
                    "index_in_complement": g.order() / r.h.order(),
                })
            })
            .collect();
        let fam = family(&m, g, b)?;
        let mut cross = Vec::new();
        for (j, g2) in cs.iter().enumerate() {
            let mut fam2 = family(&m, g2, b)?;
            fam2.sort();
            let mut imgs = fam
                .iter()
                .map(|h| cross_correspondence(&m, g, g2, h))
                .collect::<Result<Vec<_>, _>>()?;
            imgs.sort();
            imgs.dedup();
            cross.push(json!({"target": j + 1, "bijective": imgs.len() == fam.len() && imgs == fam2}));
        }
        tables.push(json!({
            "index": i + 1,
            "complement": report::group(g),
            "normal": m.gamma.is_normal(g),
            "rows": rows,
            "cross_correspondence": cross,
        }));
    }
    Ok(json!({ "model": model_json(&m), "complement_count": cs.len(), "tables": tables }))
}

fn hopf_cmd(args: &ModelArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let m = model(args, inputs, b)?;
    let r = hopf_regular_subgroups(&m, b)?;
    let pre = !normal_complements(&m.gamma, &m.gamma_e, b)?.is_empty();
    let subs: Vec<Value> = r
        .regular_subgroups
        .iter()
        .map(|s| json!({"type": s.type_name, "inside_lambda": s.inside_lambda, "group": report::group(&s.group)}))
        .collect();
    Ok(json!({
        "model": model_json(&m),
        "lambda": report::group(&r.lambda),
        "regular_subgroup_count": subs.len(),
        "regular_subgroups": subs,
        "has_witness_in_lambda": r.has_witness_in_lambda(),
        "is_pre_galois": pre,
        "agreement": pre == r.has_witness_in_lambda(),
    }))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupSource {
    Name(String),
    Explicit { degree: usize, generators: Vec<String> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    group: GroupSource,
    psi: String,
}

fn scenario(src: &str, inputs: &mut Inputs, b: &Bounds) -> Result<(String, ArithmeticModel), CliError> {
    if let Some(m) = fixtures::scenario(src) {
        inputs.0.push((format!("scenario:{src}"), Vec::new()));
        return Ok((src.to_string(), m));
    }
    if !Path::new(src).is_file() {
        return Err(CliError::Usage(format!(
            "'{src}' is neither a scenario file nor one of {}",
            fixtures::SCENARIOS.join(", ")
        )));
    }
    let text = inputs.read(src)?;
    let file: ScenarioFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let g = match file.group {
        GroupSource::Name(n) => catalog::by_name(&n).ok_or_else(|| CliError::Usage(format!("unknown catalog group '{n}'")))?,
        GroupSource::Explicit { degree, generators } => {
            let gens = generators
                .iter()
                .map(|s| parse_perm_arg(s, degree, "generator"))
                .collect::<Result<Vec<_>, _>>()?;
            PermGroup::closure_bounded(degree, &gens, b.max_elements)?
        }
    };
    let psi = parse_perm_arg(&file.psi, g.degree(), "psi")?;
    Ok((src.to_string(), fixtures::split_arithmetic_model(&g, &psi)?))
}

fn scenario_json(name: &str, m: &ArithmeticModel) -> Value {
    json!({
        "name": name,
        "g": report::group(m.g()),
        "pi_order": m.pi.order(),
        "q_order": m.q.order(),
        "psi_image": report::group(&m.psi.image()),
        "rational_point": m.rational_point,
    })
}

fn twist_cmd(args: &ScenarioArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let (name, m) = scenario(&args.scenario, inputs, b)?;
    let t = twist(&m)?;
    Ok(json!({
        "scenario": scenario_json(&name, &m),
        "twisted_image_order": t.twisted.image().order(),
        "kernel_order": t.kernel.order(),
        "kernel_identity": t.kernel_identity,
    }))
}

fn specialize_cmd(args: &SpecializeArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let (name, m) = scenario(&args.scenario.scenario, inputs, b)?;
    let alg = specialize(&m, !args.untwisted)?;
    let comps: Vec<Value> = alg
        .components
        .iter()
        .map(|c| json!({"degree": c.degree, "orbit": report::points(&c.orbit), "stabilizer_order": c.stabilizer.order()}))
        .collect();
    Ok(json!({
        "scenario": scenario_json(&name, &m),
        "twisted": !args.untwisted,
        "component_count": comps.len(),
        "degrees": alg.degrees(),
        "components": comps,
    }))
}

fn moduli_cmd(args: &ModuliArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let g = inputs.group(&args.group, b)?.group;
    let r = nor_gcen_out(&g, b)?;
    let mut out = json!({
        "group": report::group(&g),
        "normalizer_order": r.normalizer_order,
        "centralizer_order": r.centralizer_order,
        "g_cen_order": r.g_cen_order,
        "quotient_order": r.quotient_order,
        "aut_order": r.aut_order,
        "out_order": r.out_order,
        "injective_into_out": r.injective,
    });
    if let Some(a) = &args.action {
        let w = parse_perm_arg(a, g.degree(), "action")?;
        let q = catalog::cyclic(w.order() as usize);
        let f = field_of_moduli_group(&q, &[w], &g, b)?;
        out["field_of_moduli"] = json!({
            "q_order": q.order(),
            "h_order": f.h.order(),
            "quotient_order": f.quotient_order,
            "target_order": f.target_order,
            "injective": f.injective,
            "divides": f.divides,
        });
    }
    Ok(out)
}

fn rigidity_cmd(args: &RigidityArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let g = inputs.group(&args.group, b)?.group;
    let labels: Vec<&str> = args.classes.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if labels.is_empty() {
        return Err(CliError::Usage("--classes needs at least one label".into()));
    }
    let ct = ClassTuple::from_labels(g, &labels)?;
    let emb = match args.embedding {
        EmbeddingArg::Regular => Embedding::Regular,
        EmbeddingArg::Natural => Embedding::Natural,
    };
    let exps: Vec<i64> = if args.exponents.trim() == "all" {
        admissible_exponents(&ct)
    } else {
        args.exponents
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| CliError::Usage(format!("exponent '{}' is not an integer", s.trim())))
            })
            .collect::<Result<_, _>>()?
    };
    let tuples = tuple_solutions(&ct, b)?;
    let rat = is_weakly_rational(&ct, emb, &exps, b)?;
    let flags = PipelineFlags { cd_le_one: args.cd_le_one };
    let c = rigidity_pipeline(&ct, emb, &GaloisInput::Exponents(exps.clone()), flags, b)?;
    let checks: Vec<Value> = rat
        .checks
        .iter()
        .map(|x| json!({"exponent": x.exponent, "weakly": x.weakly, "rational": x.rational}))
        .collect();
    let records: Vec<Value> = c
        .action
        .records
        .iter()
        .map(|r| json!({"chi": r.chi, "branch_perm": report::points(&r.branch_perm)}))
        .collect();
    Ok(json!({
        "group": report::group(&ct.group),
        "classes": c.labels,
        "embedding_degree": c.degree,
        "tuple_exponent": ct.exponent(),
        "tuple_count": c.rigidity.tuple_count,
        "first_tuple": tuples.first().map(report::perms),
        "normalizer_orbits": c.rigidity.normalizer_orbits,
        "inner_orbits": c.rigidity.inner_orbits,
        "weakly_rigid": c.rigidity.weakly_rigid,
        "rigid": c.rigidity.rigid,
        "rationality": {
            "modulus": rat.modulus,
            "weakly_rational": rat.weakly_rational,
            "rational": rat.rational,
            "checks": checks,
        },
        "galois_action": {"modulus": c.action.modulus, "records": records},
        "weakly_k_rational": c.weakly_k_rational,
        "k_rational": c.k_rational,
        "aut_order": c.aut_order,
        "out_order": c.out_order,
        "nor_gcen_order": c.nor_gcen_order,
        "center_split": c.center_split,
        "cd_le_one": c.cd_le_one,
        "out_bound": c.out_bound,
        "premises_verified": c.premises_verified,
        "conclusions": c.conclusions,
    }))
}

fn catalog_cmd(args: &CatalogArgs, inputs: &mut Inputs, b: &Bounds) -> Result<Value, CliError> {
    let Some(name) = &args.name else {
        let groups: Vec<Value> = catalog::NAMES
            .iter()
            .map(|n| {
                let g = catalog::by_name(n).expect("listed name");
                json!({"name": n, "order": g.order(), "degree": g.degree()})
            })
            .collect();
        return Ok(json!({"groups": groups, "scenarios": fixtures::SCENARIOS}));
    };
    let g = inputs.group(name, b)?.group;
    let classes = g.conjugacy_classes();
    let labels = PermGroup::class_labels(&classes);
    let cls: Vec<Value> = classes
        .iter()
        .zip(&labels)
        .map(|(c, l)| {
            json!({
                "label": l,
                "size": c.size(),
                "element_order": c.element_order,
                "representative": report::perm(&c.representative),
            })
        })
        .collect();
    Ok(json!({
        "name": name,
        "group": report::group(&g),
        "transitive": g.is_transitive(),
        "classes": cls,
        "group_file": serialize(&g, &[]),
    }))
}

/// Runs one command; returns the full report and the inputs that went into it.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let mut b = Bounds::from_env();
    if let Some(n) = cli.max_elements {
        b.max_elements = n;
    }
    let mut inputs = Inputs::default();
    let (arguments, result) = match &cli.command {
        Command::Analyze(a) => (to_value(a), analyze_cmd(a, &mut inputs, &b)?),
        Command::Complements(a) => (to_value(a), complements_cmd(a, &mut inputs, &b)?),
        Command::Correspondence(a) => (to_value(a), correspondence_cmd(a, &mut inputs, &b)?),
        Command::Hopf(a) => (to_value(a), hopf_cmd(a, &mut inputs, &b)?),
        Command::Twist(a) => (to_value(a), twist_cmd(a, &mut inputs, &b)?),
        Command::Specialize(a) => (to_value(a), specialize_cmd(a, &mut inputs, &b)?),
        Command::Moduli(a) => (to_value(a), moduli_cmd(a, &mut inputs, &b)?),
        Command::Rigidity(a) => (to_value(a), rigidity_cmd(a, &mut inputs, &b)?),
        Command::Catalog(a) => (to_value(a), catalog_cmd(a, &mut inputs, &b)?),
    };
    Ok(report::envelope(cli.command.name(), arguments, &inputs.0, &b, result))
}

fn to_value<T: serde::Serialize>(a: &T) -> Value {
    serde_json::to_value(a).expect("arguments serialize")
}
