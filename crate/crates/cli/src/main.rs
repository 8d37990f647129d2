use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::characters::{stabilizer_xi, XiJson};
use hecke_core::ext_aff::dim_ext1_aff;
use hecke_core::ext_ss::{
    dim_ext1_supersingular, induce_matrices, published_words, DescriptorJson, SupersingularModule,
    SupersingularModuleDescriptor,
};
use hecke_core::field::FieldDescriptor;
use hecke_core::hecke::fixtures::build_pgl2;
use hecke_core::hecke::json::{matrix_from_json, MatrixJson};
use hecke_core::hecke::{build_gl_n_seeded, quotient_data, validate};
use hecke_core::oracle::{brute_force_ext1, character_module, MatrixModuleJson};
use hecke_core::planner::{reduce_simple_ext, RootSystemData, SimpleModuleTriple};
use hecke_core::zlinalg::FgAbelianGroup;
use hecke_core::{h1_abelian, make_field, FieldMatrix, FiniteField, GenericHeckeData, HeckeError, MatrixModule, Scope};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Ext¹ between supersingular modules of pro-p-Iwahori Hecke algebras at q = 0")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Family {
    #[value(name = "gl_n")]
    GlN,
    Pgl2,
}

#[derive(Subcommand)]
enum Command {
    /// Build generic data for a split group.
    Build {
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every axiom of a data file.
    Validate {
        #[arg(long)]
        data: PathBuf,
    },
    /// dim Ext¹ between two characters of the affine subalgebra.
    ExtAff {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        xi1: PathBuf,
        #[arg(long)]
        xi2: PathBuf,
    },
    /// dim Ext¹ between two supersingular modules.
    ExtSs {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
        /// Emit the term of every coset representative.
        #[arg(long)]
        breakdown: bool,
        /// Also run the brute-force oracle and fail on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Brute-force Ext¹ from explicit matrices, descriptors or characters.
    Oracle {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
        /// Only impose the relations of the affine subalgebra.
        #[arg(long)]
        aff_only: bool,
        /// Compare against the closed form.
        #[arg(long)]
        check: bool,
    },
    /// Stabilizer of a character in Ω, with the words a descriptor must supply.
    Stabilizer {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        xi: PathBuf,
    },
    /// Reduce Ext^i between simple modules to the supersingular case.
    Plan {
        /// Type such as A3 or G2, or a JSON file with a Cartan matrix.
        #[arg(long)]
        root: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
    },
    /// dim H¹ of a finitely generated abelian group.
    H1 {
        /// Cyclic orders, e.g. "Z,2,2".
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        #[arg(long)]
        action: PathBuf,
    },
    /// Keep some reflections and divide Z_κ by a subgroup.
    Quotient {
        #[arg(long)]
        data: PathBuf,
        /// Comma-separated reflection labels.
        #[arg(long, default_value = "")]
        keep: String,
        /// Z_κ elements separated by ';', coordinates by ','.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit code and optional structured detail.
#[derive(Debug)]
struct Reported {
    code: u8,
    message: String,
    payload: Value,
}

impl std::fmt::Display for Reported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Reported {}

struct Output {
    payload: Value,
    trace: Option<Value>,
}

fn ok(payload: Value) -> anyhow::Result<Output> {
    Ok(Output { payload, trace: None })
}

fn inconsistent(message: String, payload: Value) -> anyhow::Error {
    Reported { code: 3, message, payload }.into()
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("malformed JSON in {}: {e}", path.display()))
}

fn check_valid(data: &GenericHeckeData) -> anyhow::Result<()> {
    let v = validate(data);
    if v.is_empty() {
        return Ok(());
    }
    Err(Reported { code: 2, message: format!("{} axiom violations", v.len()), payload: json!({ "violations": v }) }.into())
}

fn load_data(path: &Path) -> anyhow::Result<GenericHeckeData> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let data = GenericHeckeData::from_json_str(&text).with_context(|| format!("in {}", path.display()))?;
    check_valid(&data)?;
    Ok(data)
}

fn load_module(data: &GenericHeckeData, path: &Path) -> anyhow::Result<SupersingularModule> {
    let j: DescriptorJson = read_json(path)?;
    let d = SupersingularModuleDescriptor::from_json(data, &j).with_context(|| format!("in {}", path.display()))?;
    SupersingularModule::from_descriptor(data, &d).with_context(|| format!("in {}", path.display()))
}

fn write_output(path: &Option<PathBuf>, data: &GenericHeckeData) -> anyhow::Result<Value> {
    let text = data.to_json_string();
    match path {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(json!({ "file": p.display().to_string() }))
        }
        None => Ok(json!({ "data": serde_json::from_str::<Value>(&text)? })),
    }
}

fn summary(data: &GenericHeckeData) -> Value {
    json!({
        "field_order": data.field.order(),
        "reflections": data.s_labels,
        "z_kappa": data.zk.orders,
        "omega": data.omega_labels(),
    })
}

fn seed() -> anyhow::Result<u64> {
    match std::env::var("HECKE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| anyhow!("HECKE_SEED must be a non-negative integer, got {s:?}")),
        Err(_) => Ok(0),
    }
}

/// Either explicit matrices, a supersingular descriptor (induced) or a character.
fn oracle_input(data: &GenericHeckeData, path: &Path) -> anyhow::Result<(MatrixModule, Option<SupersingularModule>, Option<Value>)> {
    let v: Value = read_json(path)?;
    if v.get("mats").is_some() {
        let j: MatrixModuleJson = serde_json::from_value(v).map_err(|e| anyhow!("malformed module in {}: {e}", path.display()))?;
        return Ok((MatrixModule::from_json(&data.field, &j)?, None, None));
    }
    if v.get("v_mats").is_some() {
        let m = load_module(data, path)?;
        return Ok((induce_matrices(data, &m)?, Some(m), None));
    }
    let xi: XiJson = serde_json::from_value(v.clone()).map_err(|e| anyhow!("malformed character in {}: {e}", path.display()))?;
    let xi = xi.resolve(data)?;
    Ok((character_module(data, &xi), None, Some(v)))
}

fn parse_group(spec: &str) -> anyhow::Result<FgAbelianGroup> {
    let orders = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "Z" | "z" | "0" => Ok(0),
            _ => s.parse::<u64>().map_err(|_| anyhow!("bad cyclic order {s:?} in group spec")),
        })
        .collect::<anyhow::Result<Vec<u64>>>()?;
    let labels = (0..orders.len()).map(|i| format!("g{i}")).collect();
    Ok(FgAbelianGroup::new(orders, labels)?)
}

#[derive(Deserialize)]
struct ActionJson {
    #[serde(default)]
    field: Option<FieldDescriptor>,
    #[serde(default)]
    p: Option<u32>,
    mats: Vec<MatrixJson>,
}

fn action_field(a: &ActionJson) -> anyhow::Result<FiniteField> {
    match (&a.field, a.p) {
        (Some(d), _) => Ok(FiniteField::from_descriptor(d)?),
        (None, Some(p)) => Ok(make_field(p, 1)?),
        (None, None) => bail!("action needs \"p\" or \"field\""),
    }
}

fn parse_subgroup(spec: &str) -> anyhow::Result<Vec<Vec<i64>>> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|e| {
            e.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("bad coordinate {x:?} in subgroup spec"))).collect()
        })
        .collect()
}

fn run(cmd: Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Build { family, n, q, output } => {
            let data = match family {
                Family::GlN => build_gl_n_seeded(n, q, seed()?)?,
                Family::Pgl2 => build_pgl2(q)?,
            };
            check_valid(&data)?;
            let mut payload = summary(&data);
            payload.as_object_mut().unwrap().extend(write_output(&output, &data)?.as_object().unwrap().clone());
            ok(payload)
        }
        Command::Validate { data } => {
            let d = load_data(&data)?;
            ok(json!({ "valid": true, "summary": summary(&d) }))
        }
        Command::ExtAff { data, xi1, xi2 } => {
            let d = load_data(&data)?;
            let a = read_json::<XiJson>(&xi1)?.resolve(&d)?;
            let b = read_json::<XiJson>(&xi2)?.resolve(&d)?;
            let r = dim_ext1_aff(&d, &a, &b)?;
            let c = &r.classification;
            let labels = |s: &[usize]| d.refl_labels(s);
            let trace = json!([
                { "step": "reflection classes", "a1": labels(&c.a1), "a2": labels(&c.a2), "a3": labels(&c.a3), "a4": labels(&c.a4) },
                { "step": "S1 and S2", "s1": labels(&c.s1), "s2": labels(&c.s2) },
                { "step": "E2 closed form", "stated": r.dim_e2_stated, "braid_derived": r.dim_e2 },
            ]);
            Ok(Output {
                payload: json!({
                    "dim_ext1": r.dim_ext1,
                    "dim_e1": r.dim_e1,
                    "dim_e2": r.dim_e2,
                    "dim_e2_stated": r.dim_e2_stated,
                    "dim_kernel": r.dim_kernel,
                }),
                trace: Some(trace),
            })
        }
        Command::ExtSs { data, m1, m2, breakdown, check } => {
            let d = load_data(&data)?;
            let (a, b) = (load_module(&d, &m1)?, load_module(&d, &m2)?);
            let r = dim_ext1_supersingular(&d, &a, &b)?;
            let mut payload = json!({ "total": r.total });
            if breakdown {
                payload["terms"] = serde_json::to_value(&r.terms)?;
            }
            if check {
                let oracle = brute_force_ext1(&d, &induce_matrices(&d, &a)?, &induce_matrices(&d, &b)?, Scope::Full)?;
                payload["oracle"] = json!(oracle);
                if oracle != r.total {
                    return Err(inconsistent(format!("closed form {} ≠ oracle {oracle}", r.total), payload));
                }
            }
            ok(payload)
        }
        Command::Oracle { data, m1, m2, aff_only, check } => {
            let d = load_data(&data)?;
            let scope = if aff_only { Scope::AffOnly } else { Scope::Full };
            let (ma, sa, xa) = oracle_input(&d, &m1)?;
            let (mb, sb, xb) = oracle_input(&d, &m2)?;
            let total = brute_force_ext1(&d, &ma, &mb, scope)?;
            let mut payload = json!({ "total": total });
            if check {
                let closed = match (sa, sb, xa, xb) {
                    (Some(a), Some(b), _, _) if !aff_only => dim_ext1_supersingular(&d, &a, &b)?.total,
                    (_, _, Some(a), Some(b)) if aff_only => {
                        let a = serde_json::from_value::<XiJson>(a)?.resolve(&d)?;
                        let b = serde_json::from_value::<XiJson>(b)?.resolve(&d)?;
                        dim_ext1_aff(&d, &a, &b)?.dim_ext1
                    }
                    _ => bail!("--check needs two descriptors, or two characters with --aff-only"),
                };
                payload["closed_form"] = json!(closed);
                if closed != total {
                    return Err(inconsistent(format!("oracle {total} ≠ closed form {closed}"), payload));
                }
            }
            ok(payload)
        }
        Command::Stabilizer { data, xi } => {
            let d = load_data(&data)?;
            let xi = read_json::<XiJson>(&xi)?.resolve(&d)?;
            let stab = stabilizer_xi(&d, &xi, None)?;
            let labels = d.omega_labels();
            let fmt = |w: &Vec<i64>| hecke_core::zlinalg::format_word(&labels, w);
            ok(json!({
                "generators": published_words(&d, &stab),
                "orders": stab.subgroup.orders,
                "coset_words": stab.coset_words.iter().map(fmt).collect::<Vec<_>>(),
                "supersingular": hecke_core::characters::is_supersingular(&d, &xi.chi, &xi.j_set)?,
            }))
        }
        Command::Plan { root, i, t1, t2 } => {
            let rs = if Path::new(&root).is_file() {
                #[derive(Deserialize)]
                struct CartanJson {
                    cartan: Vec<Vec<i64>>,
                }
                RootSystemData::from_cartan(read_json::<CartanJson>(Path::new(&root))?.cartan)?
            } else {
                RootSystemData::from_type(&root)?
            };
            let a: SimpleModuleTriple = read_json(&t1)?;
            let b: SimpleModuleTriple = read_json(&t2)?;
            let plan = reduce_simple_ext(&rs, &a, &b, i)?;
            Ok(Output { payload: serde_json::to_value(&plan.outcome)?, trace: Some(serde_json::to_value(&plan.trace)?) })
        }
        Command::H1 { group, action } => {
            let g = parse_group(&group)?;
            let a: ActionJson = read_json(&action)?;
            let f = action_field(&a)?;
            let mats = a.mats.iter().map(|m| matrix_from_json(&f, m)).collect::<Result<Vec<FieldMatrix>, HeckeError>>()?;
            ok(json!({ "dim": h1_abelian(&g, &mats, &f)? }))
        }
        Command::Quotient { data, keep, subgroup, output } => {
            let d = load_data(&data)?;
            let labels: Vec<String> = keep.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            let q = quotient_data(&d, &d.refl_indices(&labels)?, &parse_subgroup(&subgroup)?)?;
            check_valid(&q)?;
            let mut payload = summary(&q);
            payload.as_object_mut().unwrap().extend(write_output(&output, &q)?.as_object().unwrap().clone());
            ok(payload)
        }
    }
}

/// Exit code and structured detail for a failed command.
fn failure(e: &anyhow::Error) -> (u8, Value) {
    if let Some(r) = e.downcast_ref::<Reported>() {
        return (r.code, r.payload.clone());
    }
    match e.chain().find_map(|c| c.downcast_ref::<HeckeError>()) {
        Some(HeckeError::Inconsistency(_)) => (3, Value::Null),
        _ => (2, Value::Null),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(cli.cmd) {
        Ok(out) => {
            let mut v = json!({ "status": "ok", "payload": out.payload });
            if let Some(t) = out.trace {
                v["trace"] = t;
            }
            (v, 0)
        }
        Err(e) => {
            let (code, payload) = failure(&e);
            (json!({ "status": "error", "message": format!("{e:#}"), "payload": payload }), code)
        }
    };
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&value).expect("serializable"));
    ExitCode::from(code)
}
