//! Chains of monomorphisms `U^1 ↣ … ↣ U^l` of graded `R`-modules.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::additive::{stable_dim, Additive};
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Scalar};
use crate::hypersurface_module::{
    hom_basis, is_mono_epi, map_ker_cok_im, module_iso, projective_cover, HypersurfaceConfig, ModuleMap, RModule,
};
use crate::linalg::FieldMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoChain {
    cfg: HypersurfaceConfig,
    objects: Vec<RModule>,
    maps: Vec<ModuleMap>,
}

/// Why a chain failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    Empty,
    WrongMapCount { objects: usize, maps: usize },
    ConfigMismatch(usize),
    Mistyped(usize),
    NotValid(usize),
    NotMono(usize),
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::Empty => write!(f, "a chain needs at least one object"),
            ChainViolation::WrongMapCount { objects, maps } => {
                write!(f, "{objects} objects need {} maps, got {maps}", objects - 1)
            }
            ChainViolation::ConfigMismatch(k) => write!(f, "object {k} lives over a different ring"),
            ChainViolation::Mistyped(k) => write!(f, "map {k} does not go from object {k} to object {}", k + 1),
            ChainViolation::NotValid(k) => write!(f, "map {k} does not commute with x"),
            ChainViolation::NotMono(k) => write!(f, "map {k} is not injective"),
        }
    }
}

/// Checks shapes, equivariance and injectivity of every map.
pub fn chain_validate(objects: &[RModule], maps: &[ModuleMap]) -> std::result::Result<(), ChainViolation> {
    let first = objects.first().ok_or(ChainViolation::Empty)?;
    if maps.len() + 1 != objects.len() {
        return Err(ChainViolation::WrongMapCount { objects: objects.len(), maps: maps.len() });
    }
    if let Some(k) = objects.iter().position(|o| o.cfg() != first.cfg()) {
        return Err(ChainViolation::ConfigMismatch(k));
    }
    for (k, f) in maps.iter().enumerate() {
        if f.src() != &objects[k] || f.tgt() != &objects[k + 1] {
            return Err(ChainViolation::Mistyped(k));
        }
        if !f.is_valid() {
            return Err(ChainViolation::NotValid(k));
        }
        if !is_mono_epi(f).0 {
            return Err(ChainViolation::NotMono(k));
        }
    }
    Ok(())
}

impl MonoChain {
    pub fn new(objects: Vec<RModule>, maps: Vec<ModuleMap>) -> Result<MonoChain> {
        chain_validate(&objects, &maps).map_err(|v| AlgebraError::InvalidChain(v.to_string()))?;
        Ok(MonoChain { cfg: objects[0].cfg(), objects, maps })
    }

    pub(crate) fn new_unchecked(objects: Vec<RModule>, maps: Vec<ModuleMap>) -> MonoChain {
        debug_assert_eq!(chain_validate(&objects, &maps), Ok(()));
        MonoChain { cfg: objects[0].cfg(), objects, maps }
    }

    /// A chain with one object and no maps.
    pub fn single(m: RModule) -> MonoChain {
        MonoChain { cfg: m.cfg(), objects: vec![m], maps: Vec::new() }
    }

    /// The zero chain with `l` objects.
    pub fn zero(cfg: HypersurfaceConfig, l: usize) -> MonoChain {
        let z = RModule::zero(cfg);
        MonoChain {
            cfg,
            objects: vec![z.clone(); l],
            maps: vec![ModuleMap::zero(&z, &z); l.saturating_sub(1)],
        }
    }

    pub fn cfg(&self) -> HypersurfaceConfig {
        self.cfg
    }

    /// Number of objects `l`.
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[RModule] {
        &self.objects
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn top(&self) -> &RModule {
        self.objects.last().expect("chains are nonempty")
    }

    pub fn total_dim(&self) -> usize {
        self.objects.iter().map(RModule::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.objects.iter().all(RModule::is_zero)
    }

    /// Composite `U^from → U^to` (zero-based positions, `from <= to`).
    pub fn composite(&self, from: usize, to: usize) -> ModuleMap {
        let mut acc = ModuleMap::identity(&self.objects[from]);
        for k in from..to {
            acc = acc.then(&self.maps[k]);
        }
        acc
    }

    pub fn shifted(&self, t: i64) -> MonoChain {
        MonoChain {
            cfg: self.cfg,
            objects: self.objects.iter().map(|o| o.shifted(t)).collect(),
            maps: self.maps.iter().map(|f| f.shifted(t)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &MonoChain) -> Result<MonoChain> {
        if self.len() != other.len() || self.cfg != other.cfg {
            return Err(AlgebraError::InvalidChain("direct sum of chains of different shape".into()));
        }
        let sums: Vec<_> = (0..self.len())
            .map(|k| RModule::direct_sum(&[&self.objects[k], &other.objects[k]]))
            .collect::<Result<_>>()?;
        let maps = (0..self.maps.len())
            .map(|k| {
                let a = sums[k].projections[0].then(&self.maps[k]).then(&sums[k + 1].injections[0]);
                let b = sums[k].projections[1].then(&other.maps[k]).then(&sums[k + 1].injections[1]);
                a.add(&b)
            })
            .collect();
        Ok(MonoChain::new_unchecked(sums.into_iter().map(|s| s.module).collect(), maps))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "objects": self.objects.iter().map(RModule::to_json).collect::<Vec<_>>(),
            "maps": self.maps.iter().map(ModuleMap::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for MonoChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, o) in self.objects.iter().enumerate() {
            if k > 0 {
                write!(f, " >-> ")?;
            }
            write!(f, "({o})")?;
        }
        Ok(())
    }
}

/// Componentwise module maps with commuting squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    components: Vec<ModuleMap>,
}

impl ChainMap {
    /// Checks that every square commutes.
    pub fn new(src: &MonoChain, tgt: &MonoChain, components: Vec<ModuleMap>) -> Result<ChainMap> {
        if components.len() != src.len() || src.len() != tgt.len() {
            return Err(AlgebraError::InvalidChain("chain map of the wrong length".into()));
        }
        for (k, g) in components.iter().enumerate() {
            if g.src() != &src.objects[k] || g.tgt() != &tgt.objects[k] {
                return Err(AlgebraError::InvalidChain(format!("component {k} is mistyped")));
            }
        }
        for k in 0..src.maps.len() {
            let left = components[k].then(&tgt.maps[k]);
            let right = src.maps[k].then(&components[k + 1]);
            if left != right {
                return Err(AlgebraError::InvalidChain(format!("square {k} does not commute")));
            }
        }
        Ok(ChainMap { components })
    }

    pub(crate) fn new_unchecked(components: Vec<ModuleMap>) -> ChainMap {
        ChainMap { components }
    }

    pub fn identity(u: &MonoChain) -> ChainMap {
        ChainMap { components: u.objects.iter().map(ModuleMap::identity).collect() }
    }

    pub fn zero(u: &MonoChain, v: &MonoChain) -> ChainMap {
        ChainMap {
            components: u.objects.iter().zip(&v.objects).map(|(a, b)| ModuleMap::zero(a, b)).collect(),
        }
    }

    pub fn components(&self) -> &[ModuleMap] {
        &self.components
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> ChainMap {
        ChainMap {
            components: self.components.iter().zip(&f.components).map(|(g, f)| f.then(g)).collect(),
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap { components: self.components.iter().map(|g| g.scale(c)).collect() }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(ModuleMap::coords).collect()
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|g| is_mono_epi(g) == (true, true))
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|g| is_mono_epi(g).1)
    }
}

/// `0 → … → 0 ↣ A = … = A` with `n` trailing copies of `A` among `l` objects.
pub fn mu_trivial(a: &RModule, n: usize, l: usize) -> Result<MonoChain> {
    if n == 0 || n > l {
        return Err(AlgebraError::Range(format!("mu_{n} needs 1 <= n <= l = {l}")));
    }
    let z = RModule::zero(a.cfg());
    let objects: Vec<RModule> = (0..l).map(|k| if k + n >= l { a.clone() } else { z.clone() }).collect();
    let maps = (0..l - 1)
        .map(|k| {
            if k + n >= l {
                ModuleMap::identity(a)
            } else {
                ModuleMap::zero(&objects[k], &objects[k + 1])
            }
        })
        .collect();
    Ok(MonoChain::new_unchecked(objects, maps))
}

/// Prepends a zero object.
pub fn iota_embed(u: &MonoChain) -> MonoChain {
    let z = RModule::zero(u.cfg);
    let mut objects = vec![z.clone()];
    objects.extend(u.objects.iter().cloned());
    let mut maps = vec![ModuleMap::zero(&z, &u.objects[0])];
    maps.extend(u.maps.iter().cloned());
    MonoChain::new_unchecked(objects, maps)
}

/// Every object free and every cokernel free.
pub fn chain_projective_test(u: &MonoChain) -> bool {
    u.objects.iter().all(RModule::is_free) && u.maps.iter().all(|f| map_ker_cok_im(f).cok.is_free())
}

/// `P = ⊕_j μ(Q^j)` where `Q^j ↠ U^j` are projective covers and `Q^j` enters at position `j`;
/// `p^k` restricted to `Q^j` is `(U^j → U^k) ∘ q^j`.
pub fn chain_projective_cover(u: &MonoChain) -> (MonoChain, ChainMap) {
    let covers: Vec<(RModule, ModuleMap)> = u.objects.iter().map(projective_cover).collect();
    let l = u.len();
    let sums: Vec<_> = (0..l)
        .map(|k| {
            let parts: Vec<&RModule> = covers[..=k].iter().map(|c| &c.0).collect();
            RModule::direct_sum(&parts).expect("same ring")
        })
        .collect();
    let maps = (0..l.saturating_sub(1))
        .map(|k| {
            let mut acc = ModuleMap::zero(&sums[k].module, &sums[k + 1].module);
            for j in 0..=k {
                acc = acc.add(&sums[k].projections[j].then(&sums[k + 1].injections[j]));
            }
            acc
        })
        .collect();
    let p = MonoChain::new_unchecked(sums.iter().map(|s| s.module.clone()).collect(), maps);
    let components = (0..l)
        .map(|k| {
            let mut acc = ModuleMap::zero(&sums[k].module, &u.objects[k]);
            for j in 0..=k {
                let piece = sums[k].projections[j].then(&covers[j].1).then(&u.composite(j, k));
                acc = acc.add(&piece);
            }
            acc
        })
        .collect();
    (p, ChainMap::new_unchecked(components))
}

/// A basis of commuting tuples, from the combined linear system over the component hom spaces.
pub fn chain_hom_basis(u: &MonoChain, v: &MonoChain) -> Vec<ChainMap> {
    assert_eq!(u.len(), v.len(), "chains of different length");
    let field = u.cfg.field;
    let l = u.len();
    let bases: Vec<Vec<ModuleMap>> = (0..l).map(|k| hom_basis(&u.objects[k], &v.objects[k])).collect();
    let unknowns: Vec<(usize, usize)> = (0..l).flat_map(|k| (0..bases[k].len()).map(move |i| (k, i))).collect();
    // Equation block k lives in Hom(U^k, V^(k+1)).
    let block_len: Vec<usize> = (0..l.saturating_sub(1))
        .map(|k| u.objects[k].num_summands() * v.objects[k + 1].num_summands())
        .collect();
    let offsets: Vec<usize> = block_len.iter().scan(0, |acc, &n| {
        let o = *acc;
        *acc += n;
        Some(o)
    }).collect();
    let eq_len: usize = block_len.iter().sum();
    let columns: Vec<Vec<Scalar>> = unknowns
        .iter()
        .map(|&(k, i)| {
            let mut col = vec![field.zero(); eq_len];
            let b = &bases[k][i];
            if k + 1 < l {
                for (j, c) in b.then(&v.maps[k]).coords().into_iter().enumerate() {
                    col[offsets[k] + j] = &col[offsets[k] + j] + &c;
                }
            }
            if k > 0 {
                for (j, c) in u.maps[k - 1].then(b).coords().into_iter().enumerate() {
                    col[offsets[k - 1] + j] = &col[offsets[k - 1] + j] - &c;
                }
            }
            col
        })
        .collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    let kernel = if eq_len == 0 {
        FieldMatrix::identity(field, unknowns.len()).columns()
    } else {
        FieldMatrix::from_columns(field, eq_len, &columns).kernel()
    };
    kernel
        .iter()
        .map(|sol| {
            let components = (0..l)
                .map(|k| {
                    let idx: Vec<usize> = (0..unknowns.len()).filter(|&j| unknowns[j].0 == k).collect();
                    let coeffs: Vec<Scalar> = idx.iter().map(|&j| sol[j].clone()).collect();
                    ModuleMap::combination(&u.objects[k], &v.objects[k], &coeffs, &bases[k])
                })
                .collect();
            ChainMap { components }
        })
        .collect()
}

/// `dim Hom(U, V)` minus the maps factoring through the projective cover of `V`.
pub fn chain_stable_hom_dim(u: &MonoChain, v: &MonoChain) -> usize {
    let (p, cover) = chain_projective_cover(v);
    stable_dim(u, v, &p, &cover)
}

/// Bound on the exhaustive small-coefficient search used over the rationals.
pub const RATIONAL_ISO_SEARCH_LIMIT: usize = 4096;

/// Number of random hom-space elements tried over a finite field.
pub const PRIME_ISO_ATTEMPTS: usize = 64;

pub fn chain_iso_test(u: &MonoChain, v: &MonoChain) -> bool {
    chain_iso_test_seeded(u, v, 0)
}

/// Searches the hom space for a componentwise isomorphism.
pub fn chain_iso_test_seeded(u: &MonoChain, v: &MonoChain, seed: u64) -> bool {
    if u.len() != v.len() || u.cfg != v.cfg {
        return false;
    }
    if !u.objects.iter().zip(&v.objects).all(|(a, b)| module_iso(a, b)) {
        return false;
    }
    if u.is_zero() {
        return true;
    }
    let basis = chain_hom_basis(u, v);
    if basis.is_empty() {
        return false;
    }
    let field = u.cfg.field;
    let try_coeffs = |c: &[Scalar]| -> bool {
        let mut acc = ChainMap::zero(u, v);
        for (ci, b) in c.iter().zip(&basis) {
            if !ci.is_zero() {
                acc = acc.add(&b.scale(ci));
            }
        }
        acc.is_iso()
    };
    match field {
        Field::Prime(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..PRIME_ISO_ATTEMPTS).any(|_| {
                let c: Vec<Scalar> = (0..basis.len()).map(|_| field.from_i64(rng.gen_range(0..p as i64))).collect();
                try_coeffs(&c)
            })
        }
        Field::Rational => {
            let primes = first_primes(basis.len());
            let weights: Vec<Scalar> = primes.iter().map(|&p| field.from_i64(p)).collect();
            if try_coeffs(&weights) {
                return true;
            }
            small_coefficient_vectors(basis.len(), RATIONAL_ISO_SEARCH_LIMIT)
                .any(|c| try_coeffs(&c.iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>()))
        }
    }
}

fn first_primes(n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut k = 2i64;
    while out.len() < n {
        if (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0) {
            out.push(k);
        }
        k += 1;
    }
    out
}

/// Vectors over `{-1, 0, 1, 2}` in counting order, at most `limit` of them.
fn small_coefficient_vectors(n: usize, limit: usize) -> impl Iterator<Item = Vec<i64>> {
    const DIGITS: [i64; 4] = [1, -1, 2, 0];
    (0..limit).map_while(move |mut idx| {
        if n < 32 && idx >= 4usize.saturating_pow(n as u32) {
            return None;
        }
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(DIGITS[idx % 4]);
            idx /= 4;
        }
        Some(v)
    })
}

/// Random element of a hom space, for tests and generators.
pub fn random_combination<R: Rng>(rng: &mut R, field: Field, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| match field {
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
            Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
        })
        .collect()
}

impl Additive for MonoChain {
    type Map = ChainMap;

    fn field(&self) -> Field {
        self.cfg.field
    }

    fn hom_basis(&self, other: &Self) -> Vec<ChainMap> {
        chain_hom_basis(self, other)
    }

    fn identity(&self) -> ChainMap {
        ChainMap::identity(self)
    }

    fn compose(g: &ChainMap, f: &ChainMap) -> ChainMap {
        g.compose(f)
    }

    fn coords(f: &ChainMap) -> Vec<Scalar> {
        f.coords()
    }
}
