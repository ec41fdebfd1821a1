//! Calculus of constructible functions on finite stratified posets:
//! Euler-obstruction basis change, characteristic-cycle coefficients with the
//! effectivity predicate, box products, finite pushforward, smooth pullback,
//! Behrend-type functions, and class computations against a ring model.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::io::{model_from_spec, model_to_spec, IngestError, JsonInt, ModelSpec};
use crate::ring::{GradedClass, RingModel};

/// One stratum: a connected locally closed piece with its dimension and
/// compactly supported Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub name: String,
    pub dim: u32,
    pub chi_c: BigInt,
}

/// A finite stratified space: strata plus the closure partial order, with
/// s < t meaning s lies in the closure of t. Each stratum stands for its
/// closure when used as a subvariety index.
#[derive(Debug, PartialEq, Eq)]
pub struct StratSpace {
    strata: Vec<Stratum>,
    above: Vec<BTreeSet<usize>>, // above[s] = all t with s < t (strict, transitive)
}

impl StratSpace {
    /// Build from strata and strict order relations (s, t) meaning s < t.
    /// The transitive closure is taken; rejects out-of-range indices and
    /// relations that do not strictly increase dimension (which also rules
    /// out cycles).
    pub fn new(
        strata: Vec<Stratum>,
        relations: &[(usize, usize)],
    ) -> Result<Arc<StratSpace>, IngestError> {
        let n = strata.len();
        if n == 0 {
            return Err(IngestError::invalid("a space needs at least one stratum"));
        }
        let mut names = BTreeSet::new();
        for s in &strata {
            if !names.insert(&s.name) {
                return Err(IngestError::invalid(format!("duplicate stratum name `{}`", s.name)));
            }
        }
        let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(s, t) in relations {
            if s >= n || t >= n {
                return Err(IngestError::invalid("closure relation out of range"));
            }
            above[s].insert(t);
        }
        // transitive closure by iteration; the poset is tiny
        loop {
            let mut grew = false;
            for s in 0..n {
                let step: Vec<usize> =
                    above[s].iter().flat_map(|&t| above[t].iter().copied()).collect();
                for t in step {
                    grew |= above[s].insert(t);
                }
            }
            if !grew {
                break;
            }
        }
        for s in 0..n {
            for &t in &above[s] {
                if strata[s].dim >= strata[t].dim {
                    return Err(IngestError::invalid(format!(
                        "`{}` lies in the closure of `{}` but does not have smaller dimension",
                        strata[s].name, strata[t].name
                    )));
                }
            }
        }
        Ok(Arc::new(StratSpace { strata, above }))
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn stratum(&self, s: usize) -> &Stratum {
        &self.strata[s]
    }

    pub fn dim(&self, s: usize) -> u32 {
        self.strata[s].dim
    }

    pub fn name(&self, s: usize) -> &str {
        &self.strata[s].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.strata.iter().position(|s| s.name == name)
    }

    /// s lies in the closure of t (including s = t).
    pub fn leq(&self, s: usize, t: usize) -> bool {
        s == t || self.above[s].contains(&t)
    }

    /// All strata of the closure of y, including y itself.
    pub fn closure(&self, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.leq(s, y)).collect()
    }

    /// Stratum indices in strictly descending dimension order (ties by
    /// index); the back-substitution order.
    pub fn by_descending_dim(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&s| std::cmp::Reverse(self.strata[s].dim));
        idx
    }
}

fn assert_same_space(a: &Arc<StratSpace>, b: &Arc<StratSpace>) {
    assert!(Arc::ptr_eq(a, b) || a == b, "operands live on different spaces");
}

/// Local Euler obstruction values: row Y gives Eu_Y on every stratum.
/// Unitriangular over the closure order with support in the closure.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerTable {
    space: Arc<StratSpace>,
    rows: Vec<Vec<BigInt>>,
}

impl EulerTable {
    pub fn new(
        space: &Arc<StratSpace>,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<EulerTable, IngestError> {
        let n = space.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(IngestError::invalid("Euler table must be square over the strata"));
        }
        for y in 0..n {
            if !rows[y][y].is_one() {
                return Err(IngestError::invalid(format!(
                    "Eu_{} must be 1 on its own open stratum",
                    space.name(y)
                )));
            }
            for s in 0..n {
                if !space.leq(s, y) && !rows[y][s].is_zero() {
                    return Err(IngestError::invalid(format!(
                        "Eu_{} must vanish outside the closure (nonzero on `{}`)",
                        space.name(y),
                        space.name(s)
                    )));
                }
            }
        }
        Ok(EulerTable { space: space.clone(), rows })
    }

    /// The table of a space whose stratum closures are all smooth:
    /// Eu_Y is the indicator of the closure of Y.
    pub fn smooth(space: &Arc<StratSpace>) -> EulerTable {
        let n = space.len();
        let rows = (0..n)
            .map(|y| {
                (0..n)
                    .map(|s| if space.leq(s, y) { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        EulerTable { space: space.clone(), rows }
    }

    pub fn space(&self) -> &Arc<StratSpace> {
        &self.space
    }

    pub fn value(&self, y: usize, s: usize) -> &BigInt {
        &self.rows[y][s]
    }

    /// Eu_Y as a constructible function.
    pub fn row_function(&self, y: usize) -> ConstructibleFn {
        ConstructibleFn { space: self.space.clone(), values: self.rows[y].clone() }
    }
}

/// Integer-valued function determined by its value on each stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructibleFn {
    space: Arc<StratSpace>,
    values: Vec<BigInt>,
}

impl ConstructibleFn {
    pub fn new(space: &Arc<StratSpace>, values: Vec<BigInt>) -> ConstructibleFn {
        assert_eq!(values.len(), space.len(), "one value per stratum");
        ConstructibleFn { space: space.clone(), values }
    }

    pub fn zero(space: &Arc<StratSpace>) -> ConstructibleFn {
        ConstructibleFn { space: space.clone(), values: vec![BigInt::zero(); space.len()] }
    }

    /// Indicator of the open stratum s.
    pub fn indicator_open(space: &Arc<StratSpace>, s: usize) -> ConstructibleFn {
        let mut f = Self::zero(space);
        f.values[s] = BigInt::one();
        f
    }

    /// Indicator of the closure of y.
    pub fn indicator_closure(space: &Arc<StratSpace>, y: usize) -> ConstructibleFn {
        let values = (0..space.len())
            .map(|s| if space.leq(s, y) { BigInt::one() } else { BigInt::zero() })
            .collect();
        ConstructibleFn { space: space.clone(), values }
    }

    pub fn space(&self) -> &Arc<StratSpace> {
        &self.space
    }

    pub fn value(&self, s: usize) -> &BigInt {
        &self.values[s]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &ConstructibleFn) -> ConstructibleFn {
        assert_same_space(&self.space, &other.space);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ConstructibleFn { space: self.space.clone(), values }
    }

    pub fn sub(&self, other: &ConstructibleFn) -> ConstructibleFn {
        assert_same_space(&self.space, &other.space);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        ConstructibleFn { space: self.space.clone(), values }
    }

    pub fn scale(&self, c: &BigInt) -> ConstructibleFn {
        let values = self.values.iter().map(|v| v * c).collect();
        ConstructibleFn { space: self.space.clone(), values }
    }
}

/// Characteristic-cycle coefficients: a_Y per stratum-closure Y.
#[derive(Clone, Debug, PartialEq)]
pub struct CCCycle {
    space: Arc<StratSpace>,
    coeffs: Vec<BigInt>,
}

impl CCCycle {
    pub fn space(&self) -> &Arc<StratSpace> {
        &self.space
    }

    pub fn coeff(&self, y: usize) -> &BigInt {
        &self.coeffs[y]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Effectivity: all coefficients nonnegative and at least one positive.
    /// The zero cycle is not effective.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|v| !v.is_negative())
            && self.coeffs.iter().any(|v| v.is_positive())
    }
}

/// Solve φ = Σ_Y a_Y (-1)^{dim Y} Eu_Y for the a_Y by back-substitution in
/// descending dimension; the Euler table is unitriangular over the closure
/// order, so the system is uniquely solvable and the solution is integral.
pub fn to_cc_coefficients(phi: &ConstructibleFn, eu: &EulerTable) -> CCCycle {
    assert_same_space(&phi.space, &eu.space);
    let space = &phi.space;
    let mut residual = phi.values.clone();
    let mut coeffs = vec![BigInt::zero(); space.len()];
    for y in space.by_descending_dim() {
        // all higher-dimensional contributions are already subtracted, and
        // same-dimension strata never meet each other's closures
        let sign = if space.dim(y) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        let a = &sign * &residual[y];
        if a.is_zero() {
            continue;
        }
        for s in 0..space.len() {
            residual[s] -= &sign * &a * eu.value(y, s);
        }
        coeffs[y] = a;
    }
    debug_assert!(residual.iter().all(|v| v.is_zero()));
    CCCycle { space: space.clone(), coeffs }
}

/// Σ_Y a_Y (-1)^{dim Y} Eu_Y, the inverse of [`to_cc_coefficients`].
pub fn reconstruct(cc: &CCCycle, eu: &EulerTable) -> ConstructibleFn {
    assert_same_space(&cc.space, &eu.space);
    let space = &cc.space;
    let mut values = vec![BigInt::zero(); space.len()];
    for y in 0..space.len() {
        if cc.coeffs[y].is_zero() {
            continue;
        }
        let sign = if space.dim(y) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        for s in 0..space.len() {
            values[s] += &sign * &cc.coeffs[y] * eu.value(y, s);
        }
    }
    ConstructibleFn { space: space.clone(), values }
}

/// χ(Z, φ) = Σ_s χ_c(s) φ(s).
pub fn euler_characteristic(phi: &ConstructibleFn) -> BigInt {
    phi.space
        .strata
        .iter()
        .zip(&phi.values)
        .map(|(s, v)| &s.chi_c * v)
        .sum()
}

/// Index of the pair (i, j) in a product space built by [`product_space`]:
/// the first factor is the major index.
pub fn product_index(second_len: usize, i: usize, j: usize) -> usize {
    i * second_len + j
}

/// Product of two spaces: strata are pairs with dimensions added and χ_c
/// multiplied; the closure order is componentwise.
pub fn product_space(a: &Arc<StratSpace>, b: &Arc<StratSpace>) -> Arc<StratSpace> {
    let mut strata = Vec::with_capacity(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            strata.push(Stratum {
                name: format!("{}x{}", a.name(i), b.name(j)),
                dim: a.dim(i) + b.dim(j),
                chi_c: &a.stratum(i).chi_c * &b.stratum(j).chi_c,
            });
        }
    }
    let mut relations = Vec::new();
    for i in 0..a.len() {
        for j in 0..b.len() {
            for k in 0..a.len() {
                for l in 0..b.len() {
                    if a.leq(i, k) && b.leq(j, l) && (i, j) != (k, l) {
                        relations
                            .push((product_index(b.len(), i, j), product_index(b.len(), k, l)));
                    }
                }
            }
        }
    }
    StratSpace::new(strata, &relations).expect("product of valid spaces is valid")
}

/// Euler table of a product space: Eu_{Y×Y'} = Eu_Y ⊠ Eu_{Y'}.
pub fn product_euler(prod: &Arc<StratSpace>, a: &EulerTable, b: &EulerTable) -> EulerTable {
    let (la, lb) = (a.space.len(), b.space.len());
    assert_eq!(prod.len(), la * lb, "space is not the product of the factors");
    let mut rows = vec![vec![BigInt::zero(); la * lb]; la * lb];
    for y in 0..la {
        for yp in 0..lb {
            for s in 0..la {
                for sp in 0..lb {
                    rows[product_index(lb, y, yp)][product_index(lb, s, sp)] =
                        a.value(y, s) * b.value(yp, sp);
                }
            }
        }
    }
    EulerTable::new(prod, rows).expect("product of valid Euler tables is valid")
}

/// (φ ⊠ ψ)(s, s') = φ(s) ψ(s') on the product space.
pub fn box_product(
    prod: &Arc<StratSpace>,
    phi: &ConstructibleFn,
    psi: &ConstructibleFn,
) -> ConstructibleFn {
    let (la, lb) = (phi.space.len(), psi.space.len());
    assert_eq!(prod.len(), la * lb, "space is not the product of the factors");
    let mut values = vec![BigInt::zero(); la * lb];
    for i in 0..la {
        for j in 0..lb {
            values[product_index(lb, i, j)] = &phi.values[i] * &psi.values[j];
        }
    }
    ConstructibleFn { space: prod.clone(), values }
}

/// Combinatorial model of a proper map with finite fibers: every source
/// stratum maps onto a target stratum of the same dimension with a positive
/// covering degree.
#[derive(Clone, Debug)]
pub struct FiniteMap {
    source: Arc<StratSpace>,
    target: Arc<StratSpace>,
    assignment: Vec<usize>,
    degree: Vec<BigInt>,
}

impl FiniteMap {
    pub fn new(
        source: &Arc<StratSpace>,
        target: &Arc<StratSpace>,
        assignment: Vec<usize>,
        degree: Vec<BigInt>,
    ) -> FiniteMap {
        assert_eq!(assignment.len(), source.len());
        assert_eq!(degree.len(), source.len());
        for (s, &t) in assignment.iter().enumerate() {
            assert!(t < target.len(), "assignment out of range");
            assert_eq!(
                source.dim(s),
                target.dim(t),
                "finite maps preserve stratum dimension ({} -> {})",
                source.name(s),
                target.name(t)
            );
            assert!(degree[s].is_positive(), "covering degree must be positive");
        }
        FiniteMap {
            source: source.clone(),
            target: target.clone(),
            assignment,
            degree,
        }
    }

    pub fn identity(space: &Arc<StratSpace>) -> FiniteMap {
        FiniteMap {
            source: space.clone(),
            target: space.clone(),
            assignment: (0..space.len()).collect(),
            degree: vec![BigInt::one(); space.len()],
        }
    }

    /// The datum is χ_c-compatible when χ_c(s) = deg(s) χ_c(f(s)) for every
    /// source stratum; then pushforward preserves the Euler characteristic.
    pub fn is_chi_compatible(&self) -> bool {
        (0..self.source.len()).all(|s| {
            self.source.stratum(s).chi_c
                == &self.degree[s] * &self.target.stratum(self.assignment[s]).chi_c
        })
    }
}

/// f_* φ(t) = Σ_{s -> t} deg(s) φ(s).
pub fn finite_pushforward(f: &FiniteMap, phi: &ConstructibleFn) -> ConstructibleFn {
    assert_same_space(&phi.space, &f.source);
    let mut values = vec![BigInt::zero(); f.target.len()];
    for s in 0..f.source.len() {
        values[f.assignment[s]] += &f.degree[s] * &phi.values[s];
    }
    ConstructibleFn { space: f.target.clone(), values }
}

/// Combinatorial model of a smooth map of relative dimension d: a poset map
/// from source strata onto target strata that raises dimension by exactly d.
#[derive(Clone, Debug)]
pub struct SmoothMap {
    source: Arc<StratSpace>,
    target: Arc<StratSpace>,
    projection: Vec<usize>,
    d: u32,
}

impl SmoothMap {
    pub fn new(
        source: &Arc<StratSpace>,
        target: &Arc<StratSpace>,
        projection: Vec<usize>,
        d: u32,
    ) -> SmoothMap {
        assert_eq!(projection.len(), source.len());
        for (s, &t) in projection.iter().enumerate() {
            assert!(t < target.len(), "projection out of range");
            assert_eq!(
                source.dim(s),
                target.dim(t) + d,
                "smooth maps raise dimension by the relative dimension ({} -> {})",
                source.name(s),
                target.name(t)
            );
        }
        SmoothMap { source: source.clone(), target: target.clone(), projection, d }
    }

    pub fn relative_dim(&self) -> u32 {
        self.d
    }
}

/// f^* φ = (-1)^d φ∘f, the effectivity-preserving pullback convention.
pub fn smooth_pullback(f: &SmoothMap, phi: &ConstructibleFn) -> ConstructibleFn {
    assert_same_space(&phi.space, &f.target);
    let sign = if f.d % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let values = (0..f.source.len()).map(|s| &sign * &phi.values[f.projection[s]]).collect();
    ConstructibleFn { space: f.source.clone(), values }
}

/// ν = Σ_Y (-1)^{dim Y} mult(Y) Eu_Y over the listed supports. The CC
/// coefficients of the result are exactly the multiplicities, so the cycle
/// is effective by construction.
pub fn behrend_function(
    eu: &EulerTable,
    components: &[(usize, BigInt)],
) -> Result<ConstructibleFn, IngestError> {
    if components.is_empty() {
        return Err(IngestError::invalid("a Behrend-type function needs at least one component"));
    }
    let space = &eu.space;
    let mut out = ConstructibleFn::zero(space);
    for (y, mult) in components {
        if *y >= space.len() {
            return Err(IngestError::invalid("component index out of range"));
        }
        if !mult.is_positive() {
            return Err(IngestError::invalid(format!(
                "multiplicity of `{}` must be positive",
                space.name(*y)
            )));
        }
        let sign = if space.dim(*y) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        out = out.add(&eu.row_function(*y).scale(&(sign * mult)));
    }
    Ok(out)
}

/// Chern–Mather class data: one ambient-model class per stratum-closure.
#[derive(Clone, Debug)]
pub struct ClassMap {
    space: Arc<StratSpace>,
    model: Arc<RingModel>,
    classes: Vec<GradedClass>,
}

impl ClassMap {
    pub fn new(
        space: &Arc<StratSpace>,
        model: &Arc<RingModel>,
        classes: Vec<GradedClass>,
    ) -> ClassMap {
        assert_eq!(classes.len(), space.len(), "one class per stratum-closure");
        for c in &classes {
            assert_eq!(c.model().kind(), model.kind(), "class model mismatch");
        }
        ClassMap { space: space.clone(), model: model.clone(), classes }
    }

    pub fn space(&self) -> &Arc<StratSpace> {
        &self.space
    }

    pub fn model(&self) -> &Arc<RingModel> {
        &self.model
    }

    pub fn class(&self, y: usize) -> &GradedClass {
        &self.classes[y]
    }

    /// c_*(φ) = Σ_Y a_Y (-1)^{dim Y} c_Ma(Y).
    pub fn class_of(&self, phi: &ConstructibleFn, eu: &EulerTable) -> GradedClass {
        assert_same_space(&phi.space, &self.space);
        let cc = to_cc_coefficients(phi, eu);
        let mut out = GradedClass::zero(&self.model);
        for y in 0..self.space.len() {
            if cc.coeffs[y].is_zero() {
                continue;
            }
            let sign =
                if self.space.dim(y) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            out = out.add(&self.classes[y].scale(&(&sign * &cc.coeffs[y])));
        }
        out
    }

    /// s_*(φ) = c(TX)^{-1} ∩ c_*(φ).
    pub fn ssm_of(
        &self,
        phi: &ConstructibleFn,
        eu: &EulerTable,
        ctx: &GradedClass,
    ) -> GradedClass {
        self.class_of(phi, eu).multiply(&ctx.invert_unit())
    }

    pub fn signed_class_of(&self, phi: &ConstructibleFn, eu: &EulerTable) -> GradedClass {
        self.class_of(phi, eu).check_signs()
    }

    pub fn signed_ssm_of(
        &self,
        phi: &ConstructibleFn,
        eu: &EulerTable,
        ctx: &GradedClass,
    ) -> GradedClass {
        self.ssm_of(phi, eu, ctx).check_signs()
    }
}

// ---------------------------------------------------------------------------
// poset file format

#[derive(Serialize, Deserialize)]
struct PosetFile {
    strata: Vec<StratumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    euler_table: Option<BTreeMap<String, BTreeMap<String, JsonInt>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class_map: Option<ClassMapSpec>,
}

#[derive(Serialize, Deserialize)]
struct StratumSpec {
    name: String,
    dim: u32,
    chi_c: JsonInt,
    /// names of strata whose closure contains this stratum
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    closure_of: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ClassMapSpec {
    model: ModelSpec,
    classes: BTreeMap<String, Vec<JsonInt>>,
}

/// A parsed poset file: the space, its Euler table (rows default to the
/// smooth-closure table when omitted), and optional class data.
pub struct LoadedPoset {
    pub space: Arc<StratSpace>,
    pub euler: EulerTable,
    pub class_map: Option<ClassMap>,
}

pub fn parse_poset(text: &str) -> Result<LoadedPoset, IngestError> {
    let file: PosetFile = serde_json::from_str(text)?;
    let strata: Vec<Stratum> = file
        .strata
        .iter()
        .map(|s| Stratum { name: s.name.clone(), dim: s.dim, chi_c: s.chi_c.0.clone() })
        .collect();
    let index = |name: &str| -> Result<usize, IngestError> {
        file.strata
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| IngestError::invalid(format!("unknown stratum name `{name}`")))
    };
    let mut relations = Vec::new();
    for (s, spec) in file.strata.iter().enumerate() {
        for t in &spec.closure_of {
            relations.push((s, index(t)?));
        }
    }
    let space = StratSpace::new(strata, &relations)?;

    let smooth = EulerTable::smooth(&space);
    let mut rows: Vec<Vec<BigInt>> =
        (0..space.len()).map(|y| smooth.rows[y].clone()).collect();
    if let Some(table) = &file.euler_table {
        for (y_name, row) in table {
            let y = index(y_name)?;
            let mut values = vec![BigInt::zero(); space.len()];
            for (s_name, v) in row {
                values[index(s_name)?] = v.0.clone();
            }
            rows[y] = values;
        }
    }
    let euler = EulerTable::new(&space, rows)?;

    let class_map = match &file.class_map {
        None => None,
        Some(spec) => {
            let model = model_from_spec(&spec.model)?;
            let mut classes = Vec::with_capacity(space.len());
            for y in 0..space.len() {
                let row = spec.classes.get(space.name(y)).ok_or_else(|| {
                    IngestError::invalid(format!(
                        "class map is missing stratum `{}`",
                        space.name(y)
                    ))
                })?;
                if row.len() != model.basis_len() {
                    return Err(IngestError::invalid(format!(
                        "class for `{}` has {} coefficients, model needs {}",
                        space.name(y),
                        row.len(),
                        model.basis_len()
                    )));
                }
                let dense: Vec<BigInt> = row.iter().map(|v| v.0.clone()).collect();
                classes.push(GradedClass::from_dense(&model, &dense));
            }
            Some(ClassMap::new(&space, &model, classes))
        }
    };

    Ok(LoadedPoset { space, euler, class_map })
}

pub fn emit_poset(loaded: &LoadedPoset) -> String {
    let space = &loaded.space;
    let strata = (0..space.len())
        .map(|s| StratumSpec {
            name: space.name(s).to_string(),
            dim: space.dim(s),
            chi_c: JsonInt(space.stratum(s).chi_c.clone()),
            closure_of: space.above[s].iter().map(|&t| space.name(t).to_string()).collect(),
        })
        .collect();
    let euler_table = (0..space.len())
        .map(|y| {
            let row = (0..space.len())
                .filter(|&s| !loaded.euler.value(y, s).is_zero())
                .map(|s| (space.name(s).to_string(), JsonInt(loaded.euler.value(y, s).clone())))
                .collect();
            (space.name(y).to_string(), row)
        })
        .collect();
    let class_map = loaded.class_map.as_ref().map(|cm| ClassMapSpec {
        model: model_to_spec(cm.model()),
        classes: (0..space.len())
            .map(|y| {
                let dense = cm.class(y).to_dense().into_iter().map(JsonInt).collect();
                (space.name(y).to_string(), dense)
            })
            .collect(),
    });
    let file = PosetFile { strata, euler_table: Some(euler_table), class_map };
    serde_json::to_string_pretty(&file).expect("poset serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{csm_cell_projective, ssm_cell_projective, tangent_chern_projective};
    use crate::reference;

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// pt < C, both closures smooth; χ_c of the open curve stratum is 1
    /// (affine line model).
    fn two_strata() -> (Arc<StratSpace>, EulerTable) {
        let space = StratSpace::new(
            vec![
                Stratum { name: "pt".into(), dim: 0, chi_c: int(1) },
                Stratum { name: "C".into(), dim: 1, chi_c: int(1) },
            ],
            &[(0, 1)],
        )
        .unwrap();
        let eu = EulerTable::smooth(&space);
        (space, eu)
    }

    /// Cell decomposition of P^n: one stratum per dimension, χ_c = 1.
    fn pn_cells(n: u32) -> (Arc<StratSpace>, EulerTable) {
        let strata = (0..=n)
            .map(|j| Stratum { name: format!("P{j}"), dim: j, chi_c: int(1) })
            .collect();
        let relations: Vec<(usize, usize)> =
            (0..=n as usize).flat_map(|s| (s + 1..=n as usize).map(move |t| (s, t))).collect();
        let space = StratSpace::new(strata, &relations).unwrap();
        let eu = EulerTable::smooth(&space);
        (space, eu)
    }

    #[test]
    fn space_validation() {
        let strata = vec![
            Stratum { name: "a".into(), dim: 1, chi_c: int(0) },
            Stratum { name: "b".into(), dim: 1, chi_c: int(0) },
        ];
        // same-dimension closure relation is rejected
        assert!(StratSpace::new(strata.clone(), &[(0, 1)]).is_err());
        // cycles are rejected through the dimension check
        assert!(StratSpace::new(strata.clone(), &[(0, 1), (1, 0)]).is_err());
        assert!(StratSpace::new(strata, &[]).is_ok());

        let dup = vec![
            Stratum { name: "a".into(), dim: 0, chi_c: int(1) },
            Stratum { name: "a".into(), dim: 1, chi_c: int(1) },
        ];
        assert!(StratSpace::new(dup, &[(0, 1)]).is_err());
    }

    #[test]
    fn euler_table_validation() {
        let (space, _) = two_strata();
        // diagonal must be 1
        assert!(EulerTable::new(&space, vec![ints(&[2, 0]), ints(&[1, 1])]).is_err());
        // support outside the closure is rejected: Eu_pt may not see C
        assert!(EulerTable::new(&space, vec![ints(&[1, 1]), ints(&[1, 1])]).is_err());
        // a singular closure value is fine
        assert!(EulerTable::new(&space, vec![ints(&[1, 0]), ints(&[2, 1])]).is_ok());
    }

    #[test]
    fn indicator_of_open_curve_has_coefficients_minus_one() {
        let (space, eu) = two_strata();
        let phi = ConstructibleFn::indicator_open(&space, 1);
        let cc = to_cc_coefficients(&phi, &eu);
        assert_eq!(cc.coeffs(), &ints(&[-1, -1])[..]);
        assert!(!cc.is_effective());
        assert_eq!(reconstruct(&cc, &eu), phi);

        // the signed indicator is the effective one
        let signed = phi.scale(&int(-1));
        let cc = to_cc_coefficients(&signed, &eu);
        assert_eq!(cc.coeffs(), &ints(&[1, 1])[..]);
        assert!(cc.is_effective());
    }

    #[test]
    fn euler_obstruction_is_a_basis_vector() {
        let (space, eu) = two_strata();
        // φ = (-1)^{dim} Eu_Y -> a_Y = 1
        for y in 0..space.len() {
            let sign = if space.dim(y) % 2 == 1 { int(-1) } else { int(1) };
            let phi = eu.row_function(y).scale(&sign);
            let cc = to_cc_coefficients(&phi, &eu);
            for z in 0..space.len() {
                assert_eq!(*cc.coeff(z), if z == y { int(1) } else { int(0) });
            }
            assert!(cc.is_effective());
        }
    }

    #[test]
    fn zero_function_is_empty_and_not_effective() {
        let (space, eu) = two_strata();
        let cc = to_cc_coefficients(&ConstructibleFn::zero(&space), &eu);
        assert!(cc.coeffs().iter().all(|v| v.is_zero()));
        assert!(!cc.is_effective());
    }

    #[test]
    fn solver_agrees_with_dense_elimination_oracle() {
        let (space, _) = two_strata();
        let eu = EulerTable::new(&space, vec![ints(&[1, 0]), ints(&[-3, 1])]).unwrap();
        let phi = ConstructibleFn::new(&space, ints(&[7, -2]));
        let cc = to_cc_coefficients(&phi, &eu);
        let dims: Vec<u32> = (0..space.len()).map(|s| space.dim(s)).collect();
        let rows: Vec<Vec<BigInt>> = (0..space.len()).map(|y| eu.rows[y].clone()).collect();
        let want = reference::cc_solve_oracle(&dims, &rows, phi.values());
        assert_eq!(cc.coeffs(), &want[..]);
    }

    #[test]
    fn euler_characteristic_examples() {
        let (space, _) = pn_cells(3);
        assert_eq!(euler_characteristic(&ConstructibleFn::indicator_open(&space, 0)), int(1));
        assert_eq!(euler_characteristic(&ConstructibleFn::indicator_closure(&space, 3)), int(4));

        // torus model of P^1: χ_c(C^*) = 0
        let torus = StratSpace::new(
            vec![
                Stratum { name: "poles".into(), dim: 0, chi_c: int(2) },
                Stratum { name: "torus".into(), dim: 1, chi_c: int(0) },
            ],
            &[(0, 1)],
        )
        .unwrap();
        assert_eq!(euler_characteristic(&ConstructibleFn::indicator_open(&torus, 1)), int(0));
        assert_eq!(euler_characteristic(&ConstructibleFn::indicator_closure(&torus, 1)), int(2));
    }

    #[test]
    fn box_product_multiplies_cc_coefficients() {
        let (a, eu_a) = two_strata();
        let (b, eu_b) = pn_cells(2);
        let prod = product_space(&a, &b);
        let eu = product_euler(&prod, &eu_a, &eu_b);

        let phi = ConstructibleFn::new(&a, ints(&[2, -1]));
        let psi = ConstructibleFn::new(&b, ints(&[0, 3, 1]));
        let boxed = box_product(&prod, &phi, &psi);

        let cc_a = to_cc_coefficients(&phi, &eu_a);
        let cc_b = to_cc_coefficients(&psi, &eu_b);
        let cc = to_cc_coefficients(&boxed, &eu);
        for i in 0..a.len() {
            for j in 0..b.len() {
                assert_eq!(
                    *cc.coeff(product_index(b.len(), i, j)),
                    cc_a.coeff(i) * cc_b.coeff(j)
                );
            }
        }

        assert_eq!(
            euler_characteristic(&boxed),
            euler_characteristic(&phi) * euler_characteristic(&psi)
        );
    }

    #[test]
    fn box_product_with_point_is_identity() {
        let point = StratSpace::new(
            vec![Stratum { name: "pt".into(), dim: 0, chi_c: int(1) }],
            &[],
        )
        .unwrap();
        let (b, _) = pn_cells(2);
        let prod = product_space(&point, &b);
        let psi = ConstructibleFn::new(&b, ints(&[5, -1, 2]));
        let boxed = box_product(&prod, &ConstructibleFn::indicator_open(&point, 0), &psi);
        assert_eq!(boxed.values(), psi.values());
    }

    #[test]
    fn finite_pushforward_examples() {
        let (space, _) = two_strata();
        let phi = ConstructibleFn::new(&space, ints(&[3, -2]));
        let id = FiniteMap::identity(&space);
        assert_eq!(finite_pushforward(&id, &phi), phi);
        assert!(id.is_chi_compatible());

        // double cover of the point
        let point = StratSpace::new(
            vec![Stratum { name: "pt".into(), dim: 0, chi_c: int(2) }],
            &[],
        )
        .unwrap();
        let target = StratSpace::new(
            vec![Stratum { name: "pt".into(), dim: 0, chi_c: int(1) }],
            &[],
        )
        .unwrap();
        let f = FiniteMap::new(&point, &target, vec![0], vec![int(2)]);
        assert!(f.is_chi_compatible());
        let pushed = finite_pushforward(&f, &ConstructibleFn::indicator_open(&point, 0));
        assert_eq!(pushed.values(), &ints(&[2])[..]);
        assert_eq!(
            euler_characteristic(&pushed),
            euler_characteristic(&ConstructibleFn::indicator_open(&point, 0))
        );
    }

    #[test]
    #[should_panic(expected = "preserve stratum dimension")]
    fn finite_map_rejects_dimension_change() {
        let (space, _) = two_strata();
        FiniteMap::new(&space, &space, vec![1, 1], vec![int(1), int(1)]);
    }

    #[test]
    fn smooth_pullback_along_projection() {
        let (z, eu_z) = two_strata();
        let line = StratSpace::new(
            vec![Stratum { name: "A1".into(), dim: 1, chi_c: int(1) }],
            &[],
        )
        .unwrap();
        let eu_line = EulerTable::smooth(&line);
        let total = product_space(&z, &line);
        let eu_total = product_euler(&total, &eu_z, &eu_line);

        // projection (s, fiber) -> s has relative dimension 1
        let projection: Vec<usize> = (0..z.len()).collect();
        let f = SmoothMap::new(&total, &z, projection, 1);

        // pulling back Eu_Y gives (-1)^d Eu_Y ⊠ 1 on the total space
        for y in 0..z.len() {
            let pulled = smooth_pullback(&f, &eu_z.row_function(y));
            let boxed = box_product(
                &total,
                &eu_z.row_function(y),
                &ConstructibleFn::indicator_open(&line, 0),
            )
            .scale(&int(-1));
            assert_eq!(pulled, boxed);
        }

        // effectivity transfers: the signed open-curve indicator stays effective
        let phi = ConstructibleFn::indicator_open(&z, 1).scale(&int(-1));
        assert!(to_cc_coefficients(&phi, &eu_z).is_effective());
        let pulled = smooth_pullback(&f, &phi);
        assert!(to_cc_coefficients(&pulled, &eu_total).is_effective());

        // even relative dimension preserves values
        let plane = StratSpace::new(
            vec![Stratum { name: "A2".into(), dim: 2, chi_c: int(1) }],
            &[],
        )
        .unwrap();
        let total2 = product_space(&z, &plane);
        let f2 = SmoothMap::new(&total2, &z, vec![0, 1], 2);
        let pulled = smooth_pullback(&f2, &phi);
        assert_eq!(pulled.value(0), phi.value(0));
        assert_eq!(pulled.value(1), phi.value(1));
        let eu_total2 = product_euler(&total2, &eu_z, &EulerTable::smooth(&plane));
        assert!(to_cc_coefficients(&pulled, &eu_total2).is_effective());
    }

    #[test]
    fn behrend_coefficients_are_the_multiplicities() {
        let (_space, eu) = two_strata();
        let nu = behrend_function(&eu, &[(1, int(2)), (0, int(3))]).unwrap();
        // ν = (-1)^1·2·Eu_C + (-1)^0·3·Eu_pt
        assert_eq!(nu.values(), &ints(&[1, -2])[..]);
        let cc = to_cc_coefficients(&nu, &eu);
        assert_eq!(cc.coeffs(), &ints(&[3, 2])[..]);
        assert!(cc.is_effective());

        assert!(behrend_function(&eu, &[]).is_err());
        assert!(behrend_function(&eu, &[(0, int(0))]).is_err());
        assert!(behrend_function(&eu, &[(0, int(-2))]).is_err());

        // single smooth component: ν = (-1)^{dim} 1_Y
        let nu = behrend_function(&eu, &[(1, int(1))]).unwrap();
        assert_eq!(nu.values(), &ints(&[-1, -1])[..]);
    }

    #[test]
    fn class_of_reproduces_cell_classes() {
        for n in 1..=5u32 {
            let (space, eu) = pn_cells(n);
            let model = crate::ring::RingModel::projective(n);
            // smooth closures: the Chern–Mather class of P^j is its total
            // tangent class, pushed into the ambient space
            let classes: Vec<GradedClass> = (0..=n)
                .map(|j| {
                    let t = tangent_chern_projective(j);
                    let mut dense = vec![BigInt::zero(); model.basis_len()];
                    for d in 0..=j as usize {
                        dense[d] = t.coeff(d);
                    }
                    GradedClass::from_dense(&model, &dense)
                })
                .collect();
            let cm = ClassMap::new(&space, &model, classes);
            let ctx = tangent_chern_projective(n);

            for j in 0..=n {
                let phi = ConstructibleFn::indicator_open(&space, j as usize);
                assert_eq!(cm.class_of(&phi, &eu), csm_cell_projective(j, n));
                assert_eq!(cm.ssm_of(&phi, &eu, &ctx), ssm_cell_projective(j, n));
            }

            let total = ConstructibleFn::indicator_closure(&space, n as usize);
            assert_eq!(cm.class_of(&total, &eu), tangent_chern_projective(n));
            assert_eq!(
                cm.class_of(&total, &eu).degree_of(),
                euler_characteristic(&total)
            );
        }
    }

    #[test]
    fn poset_json_round_trip() {
        let text = r#"{
            "strata": [
                {"name": "pt", "dim": 0, "chi_c": "1", "closure_of": ["C"]},
                {"name": "C", "dim": 1, "chi_c": 1}
            ],
            "euler_table": {"C": {"pt": "2", "C": "1"}}
        }"#;
        let loaded = parse_poset(text).unwrap();
        assert_eq!(loaded.space.len(), 2);
        assert!(loaded.space.leq(0, 1));
        assert_eq!(*loaded.euler.value(1, 0), int(2));
        assert_eq!(*loaded.euler.value(0, 0), int(1));
        assert!(loaded.class_map.is_none());

        let emitted = emit_poset(&loaded);
        let again = parse_poset(&emitted).unwrap();
        assert_eq!(again.space, loaded.space);
        assert_eq!(again.euler, loaded.euler);
    }

    #[test]
    fn poset_json_rejections() {
        // unknown name in closure_of
        let bad = r#"{"strata": [{"name": "a", "dim": 0, "chi_c": "1", "closure_of": ["zz"]}]}"#;
        assert!(parse_poset(bad).is_err());
        // euler row breaking unit diagonal
        let bad = r#"{
            "strata": [{"name": "a", "dim": 0, "chi_c": "1"}],
            "euler_table": {"a": {"a": "3"}}
        }"#;
        assert!(parse_poset(bad).is_err());
        // dimension violation in the order
        let bad = r#"{"strata": [
            {"name": "a", "dim": 1, "chi_c": "1", "closure_of": ["b"]},
            {"name": "b", "dim": 1, "chi_c": "1"}
        ]}"#;
        assert!(parse_poset(bad).is_err());
    }
}
