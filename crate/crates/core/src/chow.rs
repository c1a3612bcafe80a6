//! Exact intersection calculus on products of up to three gerbey curves.
//!
//! Classes are rational combinations of square-free monomials in three kinds
//! of generators: `Point(i)` (a point pulled back from factor `i`), `Graph(i,
//! j)` (the graph of a correspondence between factors `i` and `j`), and the
//! internal codimension-2 class `Tridiag(i, j, k)` produced when two graphs
//! meet. Products are computed by rewriting monomials to a normal form:
//!
//! - a monomial whose codimension exceeds the ambient dimension is zero;
//! - a repeated generator is replaced by its self-intersection (zero under
//!   the standard table);
//! - `Graph(i,j) * Point(l)` with `l` in `{i,j}` becomes `Point(i) *
//!   Point(j)`, scaled by the table entry;
//! - two distinct graphs, when no graph/point step applies, merge into
//!   `Tridiag` of their three indices;
//! - `Tridiag * Graph` is zero, and `Tridiag(i,j,k) * Point(l)` becomes the
//!   full point monomial `Point(i) * Point(j) * Point(k)`.
//!
//! Rewriting is confluent for the standard table; `rewrite_outcomes_all_orders`
//! exists so that order-independence can be checked exhaustively. The table
//! of pairing numbers is plain data and can be swapped for sensitivity
//! experiments.
//!
//! Products of three distinct graph generators are rejected with a
//! diagnostic: the calculus has no pairing for them and nothing here needs
//! one.

use crate::grr::CurveId;
use crate::Rational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChowError {
    #[error("a product space must have between 1 and 3 factors, got {got}")]
    UnsupportedFactorCount { got: usize },
    #[error("elements live on different product spaces ({left} vs {right})")]
    SpaceMismatch { left: String, right: String },
    #[error("invalid generator {generator}: {reason}")]
    InvalidGenerator { generator: String, reason: String },
    #[error("no pairing for a product of three graph generators ({monomial})")]
    TripleGraphProduct { monomial: String },
    #[error("the table entry point_self is only supported on two-factor spaces")]
    UnsupportedTable,
    #[error("fiber restriction is only defined on two-factor spaces")]
    FiberRestrictNeedsPair,
    #[error("expected an integer degree, got {value}")]
    NonIntegralDegree { value: String },
    #[error("intersection table, line {line}: {reason}")]
    TableParse { line: usize, reason: String },
    #[error("cannot parse {text:?} as a generator")]
    GeneratorParse { text: String },
}

/// A product of 1 to 3 gerbey curves, identified by the factor curve ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSpace {
    factors: Vec<CurveId>,
}

impl ProductSpace {
    pub fn new(factors: Vec<CurveId>) -> Result<Self, ChowError> {
        if factors.is_empty() || factors.len() > 3 {
            return Err(ChowError::UnsupportedFactorCount { got: factors.len() });
        }
        Ok(ProductSpace { factors })
    }

    pub fn single(a: CurveId) -> Self {
        ProductSpace { factors: vec![a] }
    }

    pub fn pair(a: CurveId, b: CurveId) -> Self {
        ProductSpace {
            factors: vec![a, b],
        }
    }

    pub fn triple(a: CurveId, b: CurveId, c: CurveId) -> Self {
        ProductSpace {
            factors: vec![a, b, c],
        }
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Ambient dimension: one per curve factor.
    pub fn dimension(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn factor(&self, i: usize) -> &CurveId {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[CurveId] {
        &self.factors
    }

    fn check_generator(&self, g: Generator) -> Result<(), ChowError> {
        let n = self.factors.len() as u8;
        let bad = |reason: String| ChowError::InvalidGenerator {
            generator: g.to_string(),
            reason,
        };
        match g {
            Generator::Point(i) => {
                if i >= n {
                    return Err(bad(format!(
                        "factor index {i} out of range for {n} factors"
                    )));
                }
            }
            Generator::Graph(i, j) => {
                if i == j {
                    return Err(bad("graph factors must be distinct".into()));
                }
                if j >= n {
                    return Err(bad(format!(
                        "factor index {j} out of range for {n} factors"
                    )));
                }
            }
            Generator::Tridiag(i, j, k) => {
                if i == j || j == k {
                    return Err(bad("tridiagonal factors must be distinct".into()));
                }
                if k >= n {
                    return Err(bad(format!(
                        "factor index {k} out of range for {n} factors"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<&str> = self.factors.iter().map(|c| c.as_str()).collect();
        write!(f, "{}", names.join(" x "))
    }
}

/// Generator of the intersection calculus.
///
/// Index arguments are normalised to increasing order on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Point(u8),
    Graph(u8, u8),
    Tridiag(u8, u8, u8),
}

impl Generator {
    pub fn point(i: u8) -> Generator {
        Generator::Point(i)
    }

    pub fn graph(i: u8, j: u8) -> Generator {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        Generator::Graph(i, j)
    }

    pub fn tridiag(i: u8, j: u8, k: u8) -> Generator {
        let mut v = [i, j, k];
        v.sort_unstable();
        Generator::Tridiag(v[0], v[1], v[2])
    }

    pub fn codim(&self) -> u32 {
        match self {
            Generator::Point(_) | Generator::Graph(..) => 1,
            Generator::Tridiag(..) => 2,
        }
    }

    fn map_indices(&self, map: &[u8]) -> Generator {
        match *self {
            Generator::Point(i) => Generator::point(map[i as usize]),
            Generator::Graph(i, j) => Generator::graph(map[i as usize], map[j as usize]),
            Generator::Tridiag(i, j, k) => {
                Generator::tridiag(map[i as usize], map[j as usize], map[k as usize])
            }
        }
    }

    /// Parses the compact notation used in displays: `P0`, `G01`, `T012`.
    pub fn parse(text: &str) -> Result<Generator, ChowError> {
        let err = || ChowError::GeneratorParse { text: text.into() };
        let digits = |s: &str, n: usize| -> Result<Vec<u8>, ChowError> {
            if s.len() != n || !s.chars().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            Ok(s.chars().map(|c| c as u8 - b'0').collect())
        };
        let (head, rest) = text.split_at(text.len().min(1));
        match head {
            "P" => Ok(Generator::point(digits(rest, 1)?[0])),
            "G" => {
                let d = digits(rest, 2)?;
                if d[0] == d[1] {
                    return Err(err());
                }
                Ok(Generator::graph(d[0], d[1]))
            }
            "T" => {
                let d = digits(rest, 3)?;
                if d[0] == d[1] || d[1] == d[2] || d[0] == d[2] {
                    return Err(err());
                }
                Ok(Generator::tridiag(d[0], d[1], d[2]))
            }
            _ => Err(err()),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Point(i) => write!(f, "P{i}"),
            Generator::Graph(i, j) => write!(f, "G{i}{j}"),
            Generator::Tridiag(i, j, k) => write!(f, "T{i}{j}{k}"),
        }
    }
}

/// A formal product of generators (a multiset, kept sorted). The empty
/// monomial is the unit class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn new<I>(space: &ProductSpace, gens: I) -> Result<Monomial, ChowError>
    where
        I: IntoIterator<Item = Generator>,
    {
        let mut v: Vec<Generator> = gens.into_iter().collect();
        for &g in &v {
            space.check_generator(g)?;
        }
        v.sort_unstable();
        Ok(Monomial(v))
    }

    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn codim(&self) -> u32 {
        self.0.iter().map(|g| g.codim()).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Parses a `*`-separated monomial such as `G01*P1`; `1` or the empty string
/// is the unit.
pub fn parse_monomial(space: &ProductSpace, text: &str) -> Result<Monomial, ChowError> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Monomial::unit());
    }
    let gens = text
        .split('*')
        .map(|part| Generator::parse(part.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Monomial::new(space, gens)
}

/// Parses a signed sum of weighted generators such as `G01 + 2*P1 - P0`.
pub fn parse_divisor(space: &ProductSpace, text: &str) -> Result<DivisorClass, ChowError> {
    let mut terms: Vec<(Generator, i64)> = Vec::new();
    // normalise `a - b` to `a + -b` so that `+` separates the terms
    let normalised = text.replace('-', "+-");
    for part in normalised.split('+') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (sign, body) = match part.strip_prefix('-') {
            Some(rest) => (-1i64, rest.trim()),
            None => (1i64, part),
        };
        let (coeff, gen_text) = match body.split_once('*') {
            Some((c, g)) => {
                let coeff = c
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| ChowError::GeneratorParse { text: part.into() })?;
                (coeff, g.trim())
            }
            None => (1, body),
        };
        terms.push((Generator::parse(gen_text)?, sign * coeff));
    }
    if terms.is_empty() {
        return Err(ChowError::GeneratorParse { text: text.into() });
    }
    DivisorClass::new(space.clone(), terms)
}

/// The pairing numbers driving the rewrite rules. All entries are for the
/// codimension-1 generators on a pair of factors; the tridiagonal pairing
/// against points is fixed at 1 and calibrated to the standard table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionTable {
    /// Coefficient of `Point(i)*Point(j)` in `Graph(i,j) * Point(i)`.
    pub graph_point_source: i64,
    /// Coefficient of `Point(i)*Point(j)` in `Graph(i,j) * Point(j)`.
    pub graph_point_target: i64,
    /// Coefficient of `Point(i)*Point(j)` in `Graph(i,j)^2`.
    pub graph_self: i64,
    /// Coefficient of the point monomial in `Point(i)^2` (pairs only).
    pub point_self: i64,
}

impl IntersectionTable {
    /// The geometry of a degree-`d` correspondence between genus-1 curves:
    /// the graph meets a fiber of either ruling in one point, and both the
    /// graph and the fibers have self-intersection zero.
    pub const STANDARD: IntersectionTable = IntersectionTable {
        graph_point_source: 1,
        graph_point_target: 1,
        graph_self: 0,
        point_self: 0,
    };

    /// Parses a `key = value` table file; `#` starts a comment and missing
    /// keys keep their standard values.
    pub fn parse(text: &str) -> Result<IntersectionTable, ChowError> {
        let mut table = IntersectionTable::STANDARD;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or(ChowError::TableParse {
                line,
                reason: "expected `key = value`".into(),
            })?;
            let value: i64 = value.trim().parse().map_err(|_| ChowError::TableParse {
                line,
                reason: format!("cannot parse {:?} as an integer", value.trim()),
            })?;
            match key.trim() {
                "graph_point_source" => table.graph_point_source = value,
                "graph_point_target" => table.graph_point_target = value,
                "graph_self" => table.graph_self = value,
                "point_self" => table.point_self = value,
                other => {
                    return Err(ChowError::TableParse {
                        line,
                        reason: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(table)
    }
}

impl Default for IntersectionTable {
    fn default() -> Self {
        IntersectionTable::STANDARD
    }
}

enum Reduction {
    Zero,
    Term(i64, Monomial),
}

fn codim_of(gens: &[Generator]) -> u32 {
    gens.iter().map(|g| g.codim()).sum()
}

fn monomial_text(gens: &[Generator]) -> String {
    if gens.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    parts.join("*")
}

/// Rejects the products the calculus refuses to evaluate: three distinct
/// graph generators (possibly with one pair already merged into a
/// tridiagonal class).
fn check_evaluable(gens: &[Generator]) -> Result<(), ChowError> {
    let mut graphs = BTreeSet::new();
    let mut has_tridiag = false;
    for g in gens {
        match g {
            Generator::Graph(..) => {
                graphs.insert(*g);
            }
            Generator::Tridiag(..) => has_tridiag = true,
            Generator::Point(_) => {}
        }
    }
    if graphs.len() >= 3 || (has_tridiag && !graphs.is_empty()) {
        return Err(ChowError::TripleGraphProduct {
            monomial: monomial_text(gens),
        });
    }
    Ok(())
}

fn first_repeat(state: &[Generator]) -> Option<usize> {
    state.windows(2).position(|w| w[0] == w[1])
}

/// One graph/point rewrite opportunity: positions of the graph and the
/// point, the table coefficient, and the point index to add.
fn find_graph_point(state: &[Generator], table: &IntersectionTable) -> Option<(usize, i64, u8)> {
    for (gi, g) in state.iter().enumerate() {
        if let Generator::Graph(i, j) = *g {
            for p in state.iter() {
                if let Generator::Point(l) = *p {
                    if l == i {
                        return Some((gi, table.graph_point_source, j));
                    }
                    if l == j {
                        return Some((gi, table.graph_point_target, i));
                    }
                }
            }
        }
    }
    None
}

fn graph_positions(state: &[Generator]) -> Vec<usize> {
    state
        .iter()
        .enumerate()
        .filter(|(_, g)| matches!(g, Generator::Graph(..)))
        .map(|(i, _)| i)
        .collect()
}

fn tridiag_position(state: &[Generator]) -> Option<(usize, u8, u8, u8)> {
    state.iter().enumerate().find_map(|(pos, g)| match *g {
        Generator::Tridiag(i, j, k) => Some((pos, i, j, k)),
        _ => None,
    })
}

/// Reduces a monomial to its normal form under the rewrite rules, tracking
/// the integer coefficient picked up from the table.
fn reduce(
    gens: &[Generator],
    ambient: u32,
    factor_count: usize,
    table: &IntersectionTable,
) -> Result<Reduction, ChowError> {
    let mut state: Vec<Generator> = gens.to_vec();
    state.sort_unstable();
    let mut coeff: i64 = 1;
    loop {
        if codim_of(&state) > ambient {
            return Ok(Reduction::Zero);
        }
        if let Some(pos) = first_repeat(&state) {
            let g = state[pos];
            match g {
                Generator::Graph(i, j) => {
                    if table.graph_self == 0 {
                        return Ok(Reduction::Zero);
                    }
                    coeff *= table.graph_self;
                    state.remove(pos + 1);
                    state.remove(pos);
                    state.push(Generator::Point(i));
                    state.push(Generator::Point(j));
                }
                Generator::Point(_) => {
                    if table.point_self == 0 {
                        return Ok(Reduction::Zero);
                    }
                    if factor_count != 2 {
                        return Err(ChowError::UnsupportedTable);
                    }
                    coeff *= table.point_self;
                    state.remove(pos + 1);
                    state.remove(pos);
                    state.push(Generator::Point(0));
                    state.push(Generator::Point(1));
                }
                Generator::Tridiag(..) => return Ok(Reduction::Zero),
            }
            state.sort_unstable();
            continue;
        }
        if let Some((graph_pos, entry, other)) = find_graph_point(&state, table) {
            if entry == 0 {
                return Ok(Reduction::Zero);
            }
            coeff *= entry;
            state.remove(graph_pos);
            state.push(Generator::Point(other));
            state.sort_unstable();
            continue;
        }
        let graphs = graph_positions(&state);
        if graphs.len() >= 2 {
            let (a, b) = (state[graphs[0]], state[graphs[1]]);
            let mut indices = BTreeSet::new();
            for g in [a, b] {
                if let Generator::Graph(i, j) = g {
                    indices.insert(i);
                    indices.insert(j);
                }
            }
            debug_assert_eq!(indices.len(), 3, "two distinct graphs span three factors");
            let v: Vec<u8> = indices.into_iter().collect();
            state.remove(graphs[1]);
            state.remove(graphs[0]);
            state.push(Generator::tridiag(v[0], v[1], v[2]));
            state.sort_unstable();
            continue;
        }
        if let Some((t_pos, i, j, k)) = tridiag_position(&state) {
            if !graphs.is_empty() {
                // tridiagonal against a graph: a disguised triple-graph product
                return Ok(Reduction::Zero);
            }
            if let Some(Generator::Point(l)) = state
                .iter()
                .find(|g| matches!(g, Generator::Point(_)))
                .copied()
            {
                state.remove(t_pos);
                for idx in [i, j, k] {
                    if idx != l {
                        state.push(Generator::Point(idx));
                    }
                }
                state.sort_unstable();
                continue;
            }
        }
        break;
    }
    Ok(Reduction::Term(coeff, Monomial(state)))
}

/// Normal form of a monomial under the standard table, or `None` when the
/// monomial rewrites to zero. Total: every monomial valid on the space has a
/// well-defined outcome.
pub fn rewrite_normal_form(space: &ProductSpace, monomial: &Monomial) -> Option<Monomial> {
    match reduce(
        monomial.generators(),
        space.dimension(),
        space.factor_count(),
        &IntersectionTable::STANDARD,
    ) {
        Ok(Reduction::Zero) => None,
        Ok(Reduction::Term(coeff, m)) => {
            debug_assert_eq!(coeff, 1, "the standard table only scales by 1");
            Some(m)
        }
        Err(_) => unreachable!("the standard table never hits an unsupported entry"),
    }
}

/// Explores every order of rule application on `monomial` (standard table)
/// and collects the set of final outcomes; `None` stands for zero. A
/// singleton result certifies order-independence for that monomial.
pub fn rewrite_outcomes_all_orders(
    space: &ProductSpace,
    monomial: &Monomial,
) -> BTreeSet<Option<Monomial>> {
    fn explore(
        state: &[Generator],
        ambient: u32,
        memo: &mut BTreeMap<Vec<Generator>, BTreeSet<Option<Monomial>>>,
    ) -> BTreeSet<Option<Monomial>> {
        if let Some(hit) = memo.get(state) {
            return hit.clone();
        }
        let mut successors: Vec<Vec<Generator>> = Vec::new();
        let mut zero = false;

        if codim_of(state) > ambient {
            zero = true;
        }
        if first_repeat(state).is_some() {
            zero = true;
        }
        // graph/point steps, one per (graph, point) incidence
        let mut any_graph_point = false;
        for (gi, g) in state.iter().enumerate() {
            if let Generator::Graph(i, j) = *g {
                for p in state.iter() {
                    if let Generator::Point(l) = *p {
                        let other = if l == i {
                            Some(j)
                        } else if l == j {
                            Some(i)
                        } else {
                            None
                        };
                        if let Some(other) = other {
                            any_graph_point = true;
                            let mut next = state.to_vec();
                            next.remove(gi);
                            next.push(Generator::Point(other));
                            next.sort_unstable();
                            successors.push(next);
                        }
                    }
                }
            }
        }
        let graphs = graph_positions(state);
        if !any_graph_point && graphs.len() >= 2 {
            for (a, &pa) in graphs.iter().enumerate() {
                for &pb in graphs.iter().skip(a + 1) {
                    if state[pa] == state[pb] {
                        continue;
                    }
                    let mut indices = BTreeSet::new();
                    for g in [state[pa], state[pb]] {
                        if let Generator::Graph(i, j) = g {
                            indices.insert(i);
                            indices.insert(j);
                        }
                    }
                    let v: Vec<u8> = indices.into_iter().collect();
                    let mut next = state.to_vec();
                    next.remove(pb);
                    next.remove(pa);
                    next.push(Generator::tridiag(v[0], v[1], v[2]));
                    next.sort_unstable();
                    successors.push(next);
                }
            }
        }
        if let Some((t_pos, i, j, k)) = tridiag_position(state) {
            if !graphs.is_empty() {
                zero = true;
            }
            for g in state.iter() {
                if let Generator::Point(l) = *g {
                    let mut next = state.to_vec();
                    next.remove(t_pos);
                    for idx in [i, j, k] {
                        if idx != l {
                            next.push(Generator::Point(idx));
                        }
                    }
                    next.sort_unstable();
                    successors.push(next);
                }
            }
        }

        let mut outcomes = BTreeSet::new();
        if zero {
            outcomes.insert(None);
        }
        if successors.is_empty() && !zero {
            outcomes.insert(Some(Monomial(state.to_vec())));
        }
        for next in successors {
            outcomes.extend(explore(&next, ambient, memo));
        }
        memo.insert(state.to_vec(), outcomes.clone());
        outcomes
    }

    let mut sorted = monomial.generators().to_vec();
    sorted.sort_unstable();
    let mut memo = BTreeMap::new();
    explore(&sorted, space.dimension(), &mut memo)
}

/// An integer combination of codimension-1 generators on a product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    space: ProductSpace,
    coeffs: BTreeMap<Generator, i64>,
}

impl DivisorClass {
    pub fn new<I>(space: ProductSpace, terms: I) -> Result<Self, ChowError>
    where
        I: IntoIterator<Item = (Generator, i64)>,
    {
        let mut coeffs: BTreeMap<Generator, i64> = BTreeMap::new();
        for (g, c) in terms {
            space.check_generator(g)?;
            if g.codim() != 1 {
                return Err(ChowError::InvalidGenerator {
                    generator: g.to_string(),
                    reason: "a divisor class only holds codimension-1 generators".into(),
                });
            }
            *coeffs.entry(g).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(DivisorClass { space, coeffs })
    }

    pub fn zero(space: ProductSpace) -> Self {
        DivisorClass {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn coefficient(&self, g: Generator) -> i64 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, i64)> + '_ {
        self.coeffs.iter().map(|(g, c)| (*g, *c))
    }

    /// Negates every coefficient.
    pub fn negated(&self) -> DivisorClass {
        DivisorClass {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|(g, c)| (*g, -c)).collect(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, ChowError> {
        if self.space != other.space {
            return Err(ChowError::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        DivisorClass::new(self.space.clone(), self.terms().chain(other.terms()))
    }

    /// Reinterprets the divisor on a larger product: `factor_map[i]` is the
    /// factor of `target` that factor `i` maps to. The mapped factors must
    /// carry the same curves.
    pub fn pulled_back(
        &self,
        target: &ProductSpace,
        factor_map: &[u8],
    ) -> Result<DivisorClass, ChowError> {
        if factor_map.len() != self.space.factor_count() {
            return Err(ChowError::InvalidGenerator {
                generator: format!("{factor_map:?}"),
                reason: "the factor map must cover every source factor".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for (i, &m) in factor_map.iter().enumerate() {
            if m as usize >= target.factor_count() || !seen.insert(m) {
                return Err(ChowError::InvalidGenerator {
                    generator: format!("{factor_map:?}"),
                    reason: "the factor map must be injective into the target".into(),
                });
            }
            if target.factor(m as usize) != self.space.factor(i) {
                return Err(ChowError::SpaceMismatch {
                    left: self.space.to_string(),
                    right: target.to_string(),
                });
            }
        }
        DivisorClass::new(
            target.clone(),
            self.terms().map(|(g, c)| (g.map_indices(factor_map), c)),
        )
    }

    pub fn to_chow(&self) -> ChowElement {
        let terms = self
            .coeffs
            .iter()
            .map(|(g, c)| (Monomial(vec![*g]), Rational::from_integer(*c)));
        ChowElement {
            space: self.space.clone(),
            terms: terms.filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Multilinear power `self^k`, expanded before any rewriting so that no
    /// intermediate normal form is consulted. This is the route for symbolic
    /// squares and cubes of kernel classes.
    pub fn power(&self, k: u32, table: &IntersectionTable) -> Result<ChowElement, ChowError> {
        let copies: Vec<&DivisorClass> = (0..k).map(|_| self).collect();
        product_of_divisors(&self.space, &copies, table)
    }
}

/// Multilinear product of divisor classes on a common space, expanded fully
/// before rewriting. Repeated generators are visible to the rewrite rules
/// here, so only genuine products of three distinct graphs are rejected
/// (binary chaining of already-reduced elements is more conservative).
pub fn product_of_divisors(
    space: &ProductSpace,
    divisors: &[&DivisorClass],
    table: &IntersectionTable,
) -> Result<ChowElement, ChowError> {
    let mut expanded: Vec<(Vec<Generator>, i64)> = vec![(Vec::new(), 1)];
    for d in divisors {
        if d.space != *space {
            return Err(ChowError::SpaceMismatch {
                left: space.to_string(),
                right: d.space.to_string(),
            });
        }
        let mut next = Vec::new();
        for (mono, c) in &expanded {
            for (g, gc) in d.terms() {
                let mut m = mono.clone();
                m.push(g);
                next.push((m, c * gc));
            }
        }
        expanded = next;
    }
    let mut result = ChowElement::zero(space.clone());
    for (gens, c) in expanded {
        if c == 0 {
            continue;
        }
        check_evaluable(&gens)?;
        match reduce(&gens, space.dimension(), space.factor_count(), table)? {
            Reduction::Zero => {}
            Reduction::Term(k, mono) => {
                result.accumulate(mono, Rational::from_integer(c * k));
            }
        }
    }
    result.terms.retain(|_, c| !c.is_zero());
    Ok(result)
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_chow())
    }
}

/// A rational combination of normal-form monomials, graded by codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowElement {
    space: ProductSpace,
    terms: BTreeMap<Monomial, Rational>,
}

impl ChowElement {
    pub fn zero(space: ProductSpace) -> Self {
        ChowElement {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The unit class (empty monomial, coefficient 1).
    pub fn unit(space: ProductSpace) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(), Rational::one());
        ChowElement { space, terms }
    }

    /// Builds an element from raw monomial terms, reducing each one with the
    /// standard table.
    pub fn from_terms<I>(space: ProductSpace, terms: I) -> Result<Self, ChowError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut result = ChowElement::zero(space.clone());
        for (mono, c) in terms {
            for &g in mono.generators() {
                space.check_generator(g)?;
            }
            match reduce(
                mono.generators(),
                space.dimension(),
                space.factor_count(),
                &IntersectionTable::STANDARD,
            )? {
                Reduction::Zero => {}
                Reduction::Term(k, m) => result.accumulate(m, c * Rational::from_integer(k)),
            }
        }
        result.terms.retain(|_, c| !c.is_zero());
        Ok(result)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).copied().unwrap_or_else(Rational::zero)
    }

    fn accumulate(&mut self, mono: Monomial, c: Rational) {
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += c;
    }

    /// The graded pieces, keyed by codimension.
    pub fn graded_parts(&self) -> BTreeMap<u32, Vec<(Monomial, Rational)>> {
        let mut parts: BTreeMap<u32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts.entry(m.codim()).or_default().push((m.clone(), c));
        }
        parts
    }

    /// The codimension-`k` component.
    pub fn component(&self, codim: u32) -> ChowElement {
        ChowElement {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.codim() == codim)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    pub fn scaled(&self, k: Rational) -> ChowElement {
        if k.is_zero() {
            return ChowElement::zero(self.space.clone());
        }
        ChowElement {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), *c * k))
                .collect(),
        }
    }

    pub fn negated(&self) -> ChowElement {
        self.scaled(-Rational::one())
    }

    pub fn add(&self, other: &ChowElement) -> Result<ChowElement, ChowError> {
        if self.space != other.space {
            return Err(ChowError::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        let mut result = self.clone();
        for (m, c) in other.terms() {
            result.accumulate(m.clone(), c);
        }
        result.terms.retain(|_, c| !c.is_zero());
        Ok(result)
    }

    /// Product under the standard intersection table.
    pub fn mul(&self, other: &ChowElement) -> Result<ChowElement, ChowError> {
        self.mul_with(other, &IntersectionTable::STANDARD)
    }

    /// Product under an explicit intersection table. Fails on a product of
    /// three distinct graph generators.
    pub fn mul_with(
        &self,
        other: &ChowElement,
        table: &IntersectionTable,
    ) -> Result<ChowElement, ChowError> {
        if self.space != other.space {
            return Err(ChowError::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        let mut result = ChowElement::zero(self.space.clone());
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let mut combined: Vec<Generator> = m1.generators().to_vec();
                combined.extend_from_slice(m2.generators());
                combined.sort_unstable();
                check_evaluable(&combined)?;
                match reduce(
                    &combined,
                    self.space.dimension(),
                    self.space.factor_count(),
                    table,
                )? {
                    Reduction::Zero => {}
                    Reduction::Term(k, mono) => {
                        result.accumulate(mono, c1 * c2 * Rational::from_integer(k));
                    }
                }
            }
        }
        result.terms.retain(|_, c| !c.is_zero());
        Ok(result)
    }

    /// Degree of the top-codimension part: the full point monomial counts
    /// with coefficient 1, as does a tridiagonal class paired with a point;
    /// everything of lower codimension contributes zero.
    pub fn degree(&self) -> Rational {
        let top = self.space.dimension();
        let full_points: Vec<Generator> = (0..self.space.factor_count() as u8)
            .map(Generator::Point)
            .collect();
        let mut total = Rational::zero();
        for (m, c) in self.terms() {
            if m.codim() != top {
                continue;
            }
            if m.generators() == full_points.as_slice() {
                total += c;
                continue;
            }
            // the defined pairing of the tridiagonal class against a point
            if let [Generator::Point(_), Generator::Tridiag(..)]
            | [Generator::Tridiag(..), Generator::Point(_)] = m.generators()
            {
                total += c;
            }
        }
        total
    }
}

impl std::fmt::Display for ChowElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, Rational)> = self.terms().collect();
        ordered.sort_by_key(|(m, _)| (m.codim(), (*m).clone()));
        let mut out = String::new();
        for (idx, (m, c)) in ordered.iter().enumerate() {
            let positive = *c > Rational::zero();
            let magnitude = if positive { *c } else { -*c };
            if idx == 0 {
                if !positive {
                    out.push('-');
                }
            } else {
                out.push_str(if positive { " + " } else { " - " });
            }
            if m.is_unit() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{magnitude}*{m}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Product of two elements under the standard table.
pub fn multiply(a: &ChowElement, b: &ChowElement) -> Result<ChowElement, ChowError> {
    a.mul(b)
}

/// Degree of the intersection of a divisor on a pair with the fiber over a
/// point of the fixed factor (0 or 1). On a triple the restriction would be
/// a divisor rather than a number, so pairs only.
pub fn fiber_restrict(d: &DivisorClass, fixed_factor: u8) -> Result<i64, ChowError> {
    fiber_restrict_with(d, fixed_factor, &IntersectionTable::STANDARD)
}

pub fn fiber_restrict_with(
    d: &DivisorClass,
    fixed_factor: u8,
    table: &IntersectionTable,
) -> Result<i64, ChowError> {
    if d.space.factor_count() != 2 {
        return Err(ChowError::FiberRestrictNeedsPair);
    }
    if fixed_factor > 1 {
        return Err(ChowError::InvalidGenerator {
            generator: format!("P{fixed_factor}"),
            reason: "a pair only has factors 0 and 1".into(),
        });
    }
    let point = DivisorClass::new(d.space.clone(), [(Generator::point(fixed_factor), 1)])?;
    let product = d.to_chow().mul_with(&point.to_chow(), table)?;
    let degree = product.degree();
    if !degree.is_integer() {
        return Err(ChowError::NonIntegralDegree {
            value: degree.to_string(),
        });
    }
    Ok(degree.to_integer())
}
