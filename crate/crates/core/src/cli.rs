//! Command-line front end.
//!
//! Every subcommand funnels into [`execute_op`], the same engine the
//! scenario runner uses: an operation name plus a string-keyed parameter
//! map, returning a typed [`Report`]. Exit codes: 0 on success, 1 when the
//! mathematics refuses (domain errors, scenario expectation failures), 2
//! for usage errors (bad flags, unknown keys, malformed files).

use crate::chow::{
    fiber_restrict_with, parse_divisor, parse_monomial, rewrite_normal_form, ChowElement,
    IntersectionTable, ProductSpace,
};
use crate::grr::{euler_char, gerbey_rr_h0, CurveId, GerbeyCurve};
use crate::kernel::{
    convolve_with, inverse_moduli_with, kernel_pushforward_with, line_bundle_kernel,
    pic_target_curve, twisted_shadow, universal_pic_kernel, FmKernel,
};
use crate::report::{Report, Value};
use crate::torsor::{derived_equivalent, AutModel, TorsorGroup};
use crate::weights::{hom_weight, BrauerClass};
use crate::Rational;
use clap::{ArgAction, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Failure of one operation: either the invocation was malformed (`Usage`,
/// exit code 2) or the computation itself refused (`Math`, exit code 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpError {
    Usage(String),
    Math(String),
}

impl std::fmt::Display for OpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpError::Usage(m) => write!(f, "usage error: {m}"),
            OpError::Math(m) => write!(f, "error: {m}"),
        }
    }
}

macro_rules! math_error_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for OpError {
            fn from(e: $ty) -> OpError {
                OpError::Math(e.to_string())
            }
        })*
    };
}

math_error_from!(
    crate::chow::ChowError,
    crate::grr::GrrError,
    crate::kernel::KernelError,
    crate::torsor::TorsorError,
    crate::weights::WeightError
);

/// Typed access to the string parameter map of one operation.
struct Params<'a> {
    op: &'a str,
    map: &'a BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn check_keys(&self, allowed: &[&str]) -> Result<(), OpError> {
        for key in self.map.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(OpError::Usage(format!(
                    "unknown key `{key}` for op `{}` (allowed: {})",
                    self.op,
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    fn req(&self, key: &str) -> Result<&'a str, OpError> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| OpError::Usage(format!("op `{}` requires key `{key}`", self.op)))
    }

    fn opt(&self, key: &str) -> Option<&'a str> {
        self.map.get(key).map(String::as_str)
    }

    fn parse_number<T: std::str::FromStr>(&self, key: &str, text: &str) -> Result<T, OpError> {
        text.trim()
            .parse()
            .map_err(|_| OpError::Usage(format!("key `{key}`: cannot parse {text:?} as a number")))
    }

    fn req_u64(&self, key: &str) -> Result<u64, OpError> {
        let text = self.req(key)?;
        self.parse_number(key, text)
    }

    fn req_i64(&self, key: &str) -> Result<i64, OpError> {
        let text = self.req(key)?;
        self.parse_number(key, text)
    }

    fn opt_i64(&self, key: &str, default: i64) -> Result<i64, OpError> {
        match self.opt(key) {
            Some(text) => self.parse_number(key, text),
            None => Ok(default),
        }
    }

    fn opt_u64(&self, key: &str, default: u64) -> Result<u64, OpError> {
        match self.opt(key) {
            Some(text) => self.parse_number(key, text),
            None => Ok(default),
        }
    }

    fn opt_u32(&self, key: &str) -> Result<Option<u32>, OpError> {
        match self.opt(key) {
            Some(text) => Ok(Some(self.parse_number(key, text)?)),
            None => Ok(None),
        }
    }

    fn opt_bool(&self, key: &str, default: bool) -> Result<bool, OpError> {
        match self.opt(key) {
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(other) => Err(OpError::Usage(format!(
                "key `{key}`: expected true or false, got {other:?}"
            ))),
            None => Ok(default),
        }
    }
}

fn parse_brauer(text: &str) -> Result<BrauerClass, OpError> {
    let (value, order) = text.split_once('/').ok_or_else(|| {
        OpError::Usage(format!(
            "cannot parse Brauer class {text:?}; expected value/order such as 2/6"
        ))
    })?;
    let value: u64 = value
        .trim()
        .parse()
        .map_err(|_| OpError::Usage(format!("Brauer class value {value:?} is not an integer")))?;
    let order: u64 = order
        .trim()
        .parse()
        .map_err(|_| OpError::Usage(format!("Brauer class order {order:?} is not an integer")))?;
    BrauerClass::new(order, value).map_err(|e| OpError::Usage(e.to_string()))
}

/// Runs one named operation against a parameter map. This is the engine
/// shared by the command-line subcommands and the scenario runner.
pub fn execute_op(
    op: &str,
    params: &BTreeMap<String, String>,
    table: &IntersectionTable,
) -> Result<Report, OpError> {
    let p = Params { op, map: params };
    let mut report = match op {
        "equiv" => op_equiv(&p)?,
        "pic" => op_pic(&p)?,
        "pushforward" => op_pushforward(&p, table)?,
        "compose" => op_compose(&p, table)?,
        "chow" => op_chow(&p, table)?,
        "rr" => op_rr(&p)?,
        "simple-check" | "simple_check" => op_simple_check(&p)?,
        "shadow" => op_shadow(&p)?,
        other => {
            return Err(OpError::Usage(format!(
                "unknown op `{other}` (expected equiv, pic, pushforward, compose, chow, rr, simple-check, or shadow)"
            )))
        }
    };
    for (key, value) in params {
        report.set_input(key, value);
    }
    Ok(report)
}

fn op_equiv(p: &Params) -> Result<Report, OpError> {
    p.check_keys(&[
        "order",
        "source",
        "target",
        "target_multiple",
        "aut",
        "aut_list",
    ])?;
    let order = p.req_u64("order")?;
    let group = TorsorGroup::new(order).map_err(|e| OpError::Usage(e.to_string()))?;
    let source = group.class(p.req_u64("source")?);
    let target = match (p.opt("target"), p.opt("target_multiple")) {
        (Some(_), Some(_)) => {
            return Err(OpError::Usage(
                "keys `target` and `target_multiple` are mutually exclusive".into(),
            ))
        }
        (Some(_), None) => group.class(p.req_u64("target")?),
        (None, Some(_)) => source.pic_class(p.req_i64("target_multiple")?),
        (None, None) => {
            return Err(OpError::Usage(
                "missing key: one of `target` or `target_multiple` is required".into(),
            ))
        }
    };
    let aut = match p.opt("aut_list") {
        Some(list) => {
            let multipliers = list
                .split(',')
                .map(|item| {
                    item.trim().parse::<u64>().map_err(|_| {
                        OpError::Usage(format!(
                            "key `aut_list`: cannot parse {:?} as a number",
                            item.trim()
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            AutModel::new(group, multipliers).map_err(|e| OpError::Usage(e.to_string()))?
        }
        None => match p.opt("aut").unwrap_or("pm1") {
            "pm1" => AutModel::plus_minus_one(group),
            "trivial" => AutModel::trivial(group),
            other => {
                return Err(OpError::Usage(format!(
                    "key `aut`: expected pm1 or trivial, got {other:?}"
                )))
            }
        },
    };
    let decision = derived_equivalent(&source, &target, &aut)?;
    let mut report = Report::new("equiv");
    report.set_output("equivalent", Value::Bool(decision.equivalent));
    report.set_output("source_order", Value::from_u64(source.element_order()));
    report.set_output("target_order", Value::from_u64(target.element_order()));
    if let Some(witness) = decision.witness {
        report.set_output("witness_multiplier", Value::from_u64(witness.multiplier));
        report.set_output("witness_a", Value::from_u64(witness.a));
    }
    report.set_note(
        "classes are equivalent exactly when they generate the same subgroup; the witness solves multiplier * a * target = source",
    );
    Ok(report)
}

fn op_pic(p: &Params) -> Result<Report, OpError> {
    p.check_keys(&["order", "class", "degree"])?;
    let order = p.req_u64("order")?;
    let group = TorsorGroup::new(order).map_err(|e| OpError::Usage(e.to_string()))?;
    let class = group.class(p.req_u64("class")?);
    let degree = p.req_i64("degree")?;
    let value = class.pic_class(degree);
    let mut report = Report::new("pic");
    report.set_output("value", Value::from_u64(value.value()));
    report.set_output("class_order", Value::from_u64(class.element_order()));
    report.set_output("value_order", Value::from_u64(value.element_order()));
    report.set_note("the degree-d Picard construction multiplies a torsor class by d");
    Ok(report)
}

fn op_rr(p: &Params) -> Result<Report, OpError> {
    p.check_keys(&["genus", "degree", "trivial"])?;
    let genus = p.opt_u64("genus", 1)?;
    let degree = p.req_i64("degree")?;
    let trivial = p.opt_bool("trivial", true)?;
    let h0 = gerbey_rr_h0(genus, degree, trivial)?;
    let chi = euler_char(genus, degree);
    let h1 = h0 as i64 - chi;
    let mut report = Report::new("rr");
    report.set_output("h0", Value::from_u64(h0));
    report.set_output("h1", Value::Int(h1));
    report.set_output("chi", Value::Int(chi));
    report.set_note(
        "sections follow the sign of the degree, with the Brauer class deciding degree 0; chi = degree - genus + 1",
    );
    Ok(report)
}

struct KernelSetup {
    source: GerbeyCurve,
    kernel: FmKernel,
}

/// Builds the line-bundle kernel onto the Picard target, allowing the
/// degenerate moduli degree 0 and arbitrary weights.
fn setup_kernel(p: &Params, degree_key: &str, weight: i64) -> Result<KernelSetup, OpError> {
    let degree = p.req_i64(degree_key)?;
    let brauer = match p.opt("brauer") {
        Some(text) => parse_brauer(text)?,
        None => BrauerClass::trivial(),
    };
    let source = GerbeyCurve::genus_one(CurveId::new(p.opt("curve").unwrap_or("C")), brauer);
    let target = pic_target_curve(&source, degree);
    let kernel = line_bundle_kernel(&source, &target, degree, weight)?;
    Ok(KernelSetup { source, kernel })
}

fn op_pushforward(p: &Params, table: &IntersectionTable) -> Result<Report, OpError> {
    p.check_keys(&["degree", "curve", "brauer"])?;
    let degree = p.req_i64("degree")?;
    let setup = setup_kernel(p, "degree", 1)?;
    if degree == 0 {
        // route the degenerate case through the strict constructor's error
        universal_pic_kernel(&setup.source, 0)?;
    }
    let (rank, pushed_degree) = kernel_pushforward_with(&setup.kernel, table)?;
    let inverse = inverse_moduli_with(&setup.source, degree, table)?;
    let square = setup.kernel.c1().power(2, table)?.degree();
    debug_assert!(square.is_integer(), "integer inputs square to integers");
    let mut report = Report::new("pushforward");
    report.set_output("rank", Value::from_u64(rank));
    report.set_output("degree", Value::Int(pushed_degree));
    report.set_output("c1_squared", Value::Int(square.to_integer()));
    report.set_output("h0", Value::from_u64(rank));
    report.set_output(
        "target",
        Value::Text(setup.kernel.target().id().to_string()),
    );
    report.set_output("inverse_rank", Value::from_u64(inverse.rank()));
    report.set_output("inverse_degree", Value::Int(inverse.degree()));
    report.set_output("inverse_weight", Value::Int(inverse.weight()));
    report.set_note(
        "rank and degree of the pushforward along the second projection (character times the trivial Todd class); the inverse tag dualizes the bundle data",
    );
    Ok(report)
}

fn op_compose(p: &Params, table: &IntersectionTable) -> Result<Report, OpError> {
    p.check_keys(&["d", "f", "weight", "second_weight", "curve", "brauer"])?;
    let first = setup_kernel(p, "d", p.opt_i64("weight", 1)?)?;
    let second_degree = p.req_i64("f")?;
    let second_weight = p.opt_i64("second_weight", 1)?;
    let middle = first.kernel.target().clone();
    let far = pic_target_curve(&middle, second_degree);
    let second = line_bundle_kernel(&middle, &far, second_degree, second_weight)?;
    let conv = convolve_with(&first.kernel, &second, table)?;
    let det = conv.kernel.moduli_tag().determinant();
    let mut report = Report::new("compose");
    report.set_output("rank", Value::from_u64(conv.kernel.rank()));
    report.set_output("degree", Value::Int(conv.kernel.moduli_degree()));
    report.set_output("weight", Value::Int(conv.kernel.weight()));
    report.set_output("shift", Value::Int(conv.kernel.shift()));
    report.set_output("c1_cubed", Value::Int(conv.c1_cubed_degree));
    report.set_output("chi_crosscheck", Value::Int(conv.chi_crosscheck));
    report.set_output("source", Value::Text(conv.kernel.source().id().to_string()));
    report.set_output("target", Value::Text(conv.kernel.target().id().to_string()));
    report.set_output("det_rank", Value::from_u64(det.rank()));
    report.set_output("det_degree", Value::Int(det.degree()));
    report.set_output("det_weight", Value::Int(det.weight()));
    report.set_note(
        "composite invariants from the cube of the total class on the triple product; chi_crosscheck pairs its square against a point of the far target",
    );
    Ok(report)
}

fn op_simple_check(p: &Params) -> Result<Report, OpError> {
    p.check_keys(&["degree", "weight", "curve", "brauer"])?;
    let weight = p.opt_i64("weight", 1)?;
    let setup = setup_kernel(p, "degree", weight)?;
    let k = &setup.kernel;
    let same = k.hom_profile(true);
    let distinct = k.hom_profile(false);
    let dual = k.dual()?;
    let adjoint = k.left_adjoint()?;
    debug_assert_eq!(adjoint, k.right_adjoint().map_err(|_| ()).unwrap());
    let mut report = Report::new("simple-check");
    report.set_output("hom0_same", Value::from_u64(same.dimension(0)));
    report.set_output("hom1_same", Value::from_u64(same.dimension(1)));
    report.set_output("hom0_distinct", Value::from_u64(distinct.dimension(0)));
    report.set_output("hom1_distinct", Value::from_u64(distinct.dimension(1)));
    report.set_output("strongly_simple", Value::Bool(k.strongly_simple()));
    report.set_output("is_equivalence", Value::Bool(k.is_equivalence()));
    report.set_output("dual_degree", Value::Int(dual.moduli_degree()));
    report.set_output("dual_weight", Value::Int(dual.weight()));
    report.set_output("adjoint_shift", Value::Int(adjoint.shift()));
    report.set_output(
        "hom_weight_dual",
        Value::Int(hom_weight(k.weight(), dual.weight())),
    );
    report.set_note(
        "strong simplicity means one section and one cosection at equal fibers and none between distinct fibers; adjoints are duals shifted by the curve dimension",
    );
    Ok(report)
}

fn op_shadow(p: &Params) -> Result<Report, OpError> {
    p.check_keys(&["degree", "weight", "brauer", "curve"])?;
    let weight = p.opt_i64("weight", 1)?;
    let setup = setup_kernel(p, "degree", weight)?;
    let shadow = twisted_shadow(&setup.kernel)?;
    let mut report = Report::new("shadow");
    report.set_output("valid", Value::Bool(shadow.valid));
    report.set_output("source_twist", Value::from_u64(shadow.source_twist));
    report.set_output("target_twist", Value::from_u64(shadow.target_twist));
    report.set_output(
        "sections_consistent",
        Value::Bool(shadow.sections_consistent),
    );
    report.set_output("source", Value::Text(shadow.source_curve.to_string()));
    report.set_output("target", Value::Text(shadow.target_curve.to_string()));
    report.set_output(
        "source_brauer",
        Value::Text(shadow.source_brauer.to_string()),
    );
    report.set_output(
        "target_brauer",
        Value::Text(shadow.target_brauer.to_string()),
    );
    report.set_note(
        "a kernel descends to plain twisted sheaves exactly when it is a weight-1 equivalence; each twist is the weight times the Brauer class",
    );
    Ok(report)
}

fn chow_space(p: &Params) -> Result<ProductSpace, OpError> {
    match p.opt("space").unwrap_or("pair") {
        "pair" => Ok(ProductSpace::pair(CurveId::new("C"), CurveId::new("C'"))),
        "triple" => Ok(ProductSpace::triple(
            CurveId::new("C"),
            CurveId::new("C'"),
            CurveId::new("C''"),
        )),
        other => Err(OpError::Usage(format!(
            "key `space`: expected pair or triple, got {other:?}"
        ))),
    }
}

fn op_chow(p: &Params, table: &IntersectionTable) -> Result<Report, OpError> {
    p.check_keys(&["space", "monomial", "divisor", "power", "fixed"])?;
    let space = chow_space(p)?;
    let mut report = Report::new("chow");
    match (p.opt("monomial"), p.opt("divisor")) {
        (Some(_), Some(_)) => {
            return Err(OpError::Usage(
                "give either `monomial` or `divisor`, not both".into(),
            ))
        }
        (Some(text), None) => {
            if p.opt("power").is_some() || p.opt("fixed").is_some() {
                return Err(OpError::Usage(
                    "`power` and `fixed` only apply to a `divisor`".into(),
                ));
            }
            let monomial =
                parse_monomial(&space, text).map_err(|e| OpError::Usage(e.to_string()))?;
            let element = ChowElement::from_terms(
                space.clone(),
                [(monomial.clone(), Rational::from_integer(1))],
            )?;
            match rewrite_normal_form(&space, &monomial) {
                Some(normal) => {
                    report.set_output("normal_form", Value::Text(normal.to_string()));
                    report.set_output("zero", Value::Bool(false));
                    report.set_output("codim", Value::from_u64(normal.codim() as u64));
                }
                None => {
                    report.set_output("normal_form", Value::Text("0".into()));
                    report.set_output("zero", Value::Bool(true));
                }
            }
            report.set_output("degree", Value::Rat(element.degree()));
        }
        (None, Some(text)) => {
            let divisor = parse_divisor(&space, text).map_err(|e| OpError::Usage(e.to_string()))?;
            match p.opt("fixed") {
                Some(fixed_text) => {
                    if p.opt("power").is_some() {
                        return Err(OpError::Usage(
                            "give either `power` or `fixed`, not both".into(),
                        ));
                    }
                    let fixed: u8 = p.parse_number("fixed", fixed_text)?;
                    let fiber = fiber_restrict_with(&divisor, fixed, table)?;
                    report.set_output("fiber_degree", Value::Int(fiber));
                }
                None => {
                    let power = p.opt_u32("power")?.unwrap_or(space.dimension());
                    let element = divisor.power(power, table)?;
                    report.set_output("result", Value::Text(element.to_string()));
                    report.set_output("degree", Value::Rat(element.degree()));
                }
            }
        }
        (None, None) => {
            return Err(OpError::Usage(
                "op `chow` requires a `monomial` or a `divisor`".into(),
            ))
        }
    }
    report.set_note(
        "normal forms under the graph/point rewriting; a degree is the coefficient of the full point class",
    );
    Ok(report)
}

// ---------------------------------------------------------------------
// clap front end
// ---------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "fmcalc",
    version,
    about = "Symbolic calculator for integral-transform kernels on gerbey genus-1 curves",
    propagate_version = true
)]
struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Intersection-table file overriding the standard pairing numbers
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide derived equivalence of two torsor classes in Z/n
    Equiv {
        /// Order n of the torsor group
        #[arg(long)]
        order: u64,
        /// Source class (a residue mod n)
        #[arg(long)]
        source: u64,
        /// Target class (a residue mod n)
        #[arg(long, conflicts_with = "target_multiple")]
        target: Option<u64>,
        /// Build the target as the degree-m Picard image of the source
        #[arg(long, value_name = "M", allow_negative_numbers = true)]
        target_multiple: Option<i64>,
        /// Automorphism preset: pm1 or trivial
        #[arg(long, default_value = "pm1")]
        aut: String,
        /// Explicit comma-separated multiplier set (overrides --aut)
        #[arg(long)]
        aut_list: Option<String>,
    },
    /// Apply the degree-d Picard construction to a torsor class
    Pic {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        class: u64,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Rank and degree of the pushforward of the universal kernel
    Pushforward {
        /// Moduli degree d of the universal kernel (must be positive)
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, default_value = "C")]
        curve: String,
        /// Brauer class of the source, written value/order
        #[arg(long, default_value = "0/1")]
        brauer: String,
    },
    /// Convolve two universal kernels over the shared Picard curve
    Compose {
        /// Moduli degree of the first kernel
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Moduli degree of the second kernel
        #[arg(long, allow_negative_numbers = true)]
        f: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        second_weight: i64,
        #[arg(long, default_value = "C")]
        curve: String,
    },
    /// Normal forms, powers, and fiber restrictions in the intersection calculus
    Chow {
        /// Ambient product: pair or triple
        #[arg(long, default_value = "pair")]
        space: String,
        /// A `*`-separated monomial such as G01*P1
        #[arg(long)]
        monomial: Option<String>,
        /// A signed sum of generators such as "G01 + 2*P1"
        #[arg(long)]
        divisor: Option<String>,
        /// Power to raise the divisor to (defaults to the ambient dimension)
        #[arg(long)]
        power: Option<u32>,
        /// Restrict the divisor to a fiber over this factor (pairs only)
        #[arg(long)]
        fixed: Option<u8>,
    },
    /// Section count and Euler characteristic on a gerbey curve
    Rr {
        #[arg(long, default_value_t = 1)]
        genus: u64,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Whether the restricted Brauer obstruction vanishes
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        trivial: bool,
    },
    /// Hom profiles, simplicity, and adjoints of a kernel
    SimpleCheck {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        weight: i64,
        #[arg(long, default_value = "C")]
        curve: String,
    },
    /// Descent of a kernel to plain twisted sheaves
    Shadow {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        weight: i64,
        /// Brauer class of the source, written value/order
        #[arg(long, default_value = "0/1")]
        brauer: String,
        #[arg(long, default_value = "C")]
        curve: String,
    },
    /// Run scenario files of operations with golden expectations
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Subcommand, Debug)]
enum ScenarioAction {
    /// Execute every scenario in the file and check its expectations
    Run { file: PathBuf },
}

impl Command {
    /// The operation name and parameter map this subcommand stands for;
    /// `None` for the scenario runner.
    fn into_op(self) -> Option<(String, BTreeMap<String, String>)> {
        let mut map = BTreeMap::new();
        let mut set = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        let op = match self {
            Command::Equiv {
                order,
                source,
                target,
                target_multiple,
                aut,
                aut_list,
            } => {
                set("order", order.to_string());
                set("source", source.to_string());
                if let Some(t) = target {
                    set("target", t.to_string());
                }
                if let Some(m) = target_multiple {
                    set("target_multiple", m.to_string());
                }
                set("aut", aut);
                if let Some(list) = aut_list {
                    set("aut_list", list);
                }
                "equiv"
            }
            Command::Pic {
                order,
                class,
                degree,
            } => {
                set("order", order.to_string());
                set("class", class.to_string());
                set("degree", degree.to_string());
                "pic"
            }
            Command::Pushforward {
                degree,
                curve,
                brauer,
            } => {
                set("degree", degree.to_string());
                set("curve", curve);
                set("brauer", brauer);
                "pushforward"
            }
            Command::Compose {
                d,
                f,
                weight,
                second_weight,
                curve,
            } => {
                set("d", d.to_string());
                set("f", f.to_string());
                set("weight", weight.to_string());
                set("second_weight", second_weight.to_string());
                set("curve", curve);
                "compose"
            }
            Command::Chow {
                space,
                monomial,
                divisor,
                power,
                fixed,
            } => {
                set("space", space);
                if let Some(m) = monomial {
                    set("monomial", m);
                }
                if let Some(d) = divisor {
                    set("divisor", d);
                }
                if let Some(p) = power {
                    set("power", p.to_string());
                }
                if let Some(f) = fixed {
                    set("fixed", f.to_string());
                }
                "chow"
            }
            Command::Rr {
                genus,
                degree,
                trivial,
            } => {
                set("genus", genus.to_string());
                set("degree", degree.to_string());
                set("trivial", trivial.to_string());
                "rr"
            }
            Command::SimpleCheck {
                degree,
                weight,
                curve,
            } => {
                set("degree", degree.to_string());
                set("weight", weight.to_string());
                set("curve", curve);
                "simple-check"
            }
            Command::Shadow {
                degree,
                weight,
                brauer,
                curve,
            } => {
                set("degree", degree.to_string());
                set("weight", weight.to_string());
                set("brauer", brauer);
                set("curve", curve);
                "shadow"
            }
            Command::Scenario { .. } => return None,
        };
        Some((op.to_string(), map))
    }
}

/// Parses and runs a full command line (including the binary name) and
/// returns the process exit code, printing reports to stdout and errors to
/// stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let table = match &cli.table {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(text) => text,
                Err(e) => {
                    eprintln!(
                        "usage error: cannot read table file {}: {e}",
                        path.display()
                    );
                    return 2;
                }
            };
            match IntersectionTable::parse(&text) {
                Ok(table) => table,
                Err(e) => {
                    eprintln!("usage error: {e}");
                    return 2;
                }
            }
        }
        None => IntersectionTable::STANDARD,
    };

    if let Command::Scenario {
        action: ScenarioAction::Run { file },
    } = &cli.command
    {
        let text = match std::fs::read_to_string(file) {
            Ok(text) => text,
            Err(e) => {
                eprintln!(
                    "usage error: cannot read scenario file {}: {e}",
                    file.display()
                );
                return 2;
            }
        };
        return match crate::scenario::run(&text, &table) {
            Ok(outcome) => {
                for line in &outcome.lines {
                    println!("{line}");
                }
                println!("{}", outcome.summary());
                if outcome.failed > 0 {
                    1
                } else {
                    0
                }
            }
            Err(e) => {
                eprintln!("usage error: {e}");
                2
            }
        };
    }

    let (op, params) = cli
        .command
        .into_op()
        .expect("non-scenario commands always map to an op");
    match execute_op(&op, &params, &table) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            0
        }
        Err(OpError::Usage(message)) => {
            eprintln!("usage error: {message}");
            2
        }
        Err(OpError::Math(message)) => {
            eprintln!("error: {message}");
            1
        }
    }
}
