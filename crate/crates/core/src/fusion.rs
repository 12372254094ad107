//! Fusion systems: irreducible labels, conjugates and tensor decompositions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{IrrepLabel, Letter, Word};

/// Default cap on the number of distinct irreps in a decomposition.
pub const DEFAULT_MAX_SUPPORT: usize = 1_000_000;

/// Finitely supported map `IrrepLabel → multiplicity ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityVector(BTreeMap<IrrepLabel, u128>);

impl MultiplicityVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: IrrepLabel) -> Self {
        let mut m = Self::new();
        m.0.insert(label, 1);
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (IrrepLabel, u128)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (l, k) in pairs {
            m.add(l, k).expect("multiplicity overflow");
        }
        m
    }

    /// Adds `k` copies of `label`; zero is a no-op.
    pub fn add(&mut self, label: IrrepLabel, k: u128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let name = label.to_string();
        let slot = self.0.entry(label).or_insert(0);
        *slot = slot.checked_add(k).ok_or(Error::Overflow(name))?;
        Ok(())
    }

    pub fn get(&self, label: &IrrepLabel) -> u128 {
        self.0.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, u128)> {
        self.0.iter().map(|(l, &k)| (l, k))
    }

    pub fn labels(&self) -> impl Iterator<Item = &IrrepLabel> {
        self.0.keys()
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of irreducible summands, counted with multiplicity.
    pub fn total(&self) -> u128 {
        self.0.values().sum()
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, k)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{k}·{l}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MultEntry {
    irrep: IrrepLabel,
    mult: u128,
}

impl Serialize for MultiplicityVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (l, k) in self.iter() {
            seq.serialize_element(&MultEntry { irrep: l.clone(), mult: k })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MultiplicityVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<MultEntry>::deserialize(d)?;
        let mut m = MultiplicityVector::new();
        for e in entries {
            if e.mult == 0 {
                return Err(serde::de::Error::custom("zero multiplicity entry"));
            }
            m.add(e.irrep, e.mult).map_err(serde::de::Error::custom)?;
        }
        Ok(m)
    }
}

/// `(a, b, [(c, N_ab^c)])`.
pub type TableEntry = (String, String, Vec<(String, u64)>);

/// Explicit fusion rules `N_{ab}^c` over string keys. Pairs may be absent;
/// fusing an absent pair is an error, not an empty result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    unit: String,
    duals: BTreeMap<String, String>,
    fusion: BTreeMap<(String, String), Vec<(String, u64)>>,
}

impl FusionTable {
    /// Builds and validates the unit law, dual involution and key references.
    /// Entries for pairs involving the unit may be omitted.
    pub fn new(
        unit: String,
        duals: BTreeMap<String, String>,
        entries: Vec<TableEntry>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTable(m));
        match duals.get(&unit) {
            None => return bad(format!("unit `{unit}` is not a listed irrep")),
            Some(d) if *d != unit => return bad(format!("unit `{unit}` has dual `{d}`; it must be self-dual")),
            _ => {}
        }
        for (k, d) in &duals {
            match duals.get(d) {
                None => return bad(format!("irrep `{k}`: dual `{d}` is not a listed irrep")),
                Some(dd) if dd != k => {
                    return bad(format!("irrep `{k}`: dual of its dual `{d}` is `{dd}`, not `{k}`"))
                }
                _ => {}
            }
        }
        let mut fusion = BTreeMap::new();
        for (i, (a, b, out)) in entries.into_iter().enumerate() {
            let at = format!("fusion[{i}] ({a} ⊗ {b})");
            for key in [&a, &b] {
                if !duals.contains_key(key) {
                    return bad(format!("{at}: unknown irrep `{key}`"));
                }
            }
            let mut canon: BTreeMap<String, u64> = BTreeMap::new();
            for (c, m) in out {
                if !duals.contains_key(&c) {
                    return bad(format!("{at}: output `{c}` is not a listed irrep"));
                }
                if m == 0 {
                    return bad(format!("{at}: output `{c}` has multiplicity 0"));
                }
                *canon.entry(c).or_insert(0) += m;
            }
            if canon.is_empty() {
                return bad(format!("{at}: empty decomposition"));
            }
            let canon: Vec<(String, u64)> = canon.into_iter().collect();
            if a == unit || b == unit {
                let other = if a == unit { &b } else { &a };
                if canon != vec![(other.clone(), 1)] {
                    return bad(format!("{at}: unit law violated, expected `{other}` once"));
                }
            }
            if fusion.insert((a.clone(), b.clone()), canon).is_some() {
                return bad(format!("{at}: duplicate entry"));
            }
        }
        Ok(Self { unit, duals, fusion })
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.duals.keys()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.duals.contains_key(key)
    }

    pub fn dual(&self, key: &str) -> Option<&str> {
        self.duals.get(key).map(String::as_str)
    }

    /// Listed entries in canonical `(a, b)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, &[(String, u64)])> {
        self.fusion
            .iter()
            .map(|((a, b), out)| (a.as_str(), b.as_str(), out.as_slice()))
    }

    fn fuse(&self, a: &str, b: &str) -> Result<MultiplicityVector> {
        for k in [a, b] {
            if !self.contains(k) {
                return Err(Error::UnknownLabel(k.to_string()));
            }
        }
        if a == self.unit {
            return Ok(MultiplicityVector::single(IrrepLabel::key(b)));
        }
        if b == self.unit {
            return Ok(MultiplicityVector::single(IrrepLabel::key(a)));
        }
        let out = self
            .fusion
            .get(&(a.to_string(), b.to_string()))
            .ok_or_else(|| Error::MissingFusion { a: a.into(), b: b.into() })?;
        Ok(MultiplicityVector::from_pairs(
            out.iter().map(|(c, m)| (IrrepLabel::key(c.clone()), *m as u128)),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionRules {
    /// `u_a ⊗ u_b = u_{|a-b|} ⊕ u_{|a-b|+2} ⊕ … ⊕ u_{a+b}`.
    Su2Type,
    /// Powers of one generator and of its conjugate; `g^a ⊗ g^b = g^{a+b}`.
    FreePower,
    Table(Arc<FusionTable>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionKind {
    Su2Type,
    FreePower,
    TableDriven,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionSystem {
    rules: FusionRules,
    max_support: usize,
}

impl FusionSystem {
    pub fn su2_type() -> Self {
        Self::from_rules(FusionRules::Su2Type)
    }

    pub fn free_power() -> Self {
        Self::from_rules(FusionRules::FreePower)
    }

    pub fn table(table: FusionTable) -> Self {
        Self::from_rules(FusionRules::Table(Arc::new(table)))
    }

    fn from_rules(rules: FusionRules) -> Self {
        Self { rules, max_support: DEFAULT_MAX_SUPPORT }
    }

    pub fn with_max_support(mut self, cap: usize) -> Self {
        self.max_support = cap;
        self
    }

    pub fn max_support(&self) -> usize {
        self.max_support
    }

    pub fn rules(&self) -> &FusionRules {
        &self.rules
    }

    pub fn kind(&self) -> FusionKind {
        match self.rules {
            FusionRules::Su2Type => FusionKind::Su2Type,
            FusionRules::FreePower => FusionKind::FreePower,
            FusionRules::Table(_) => FusionKind::TableDriven,
        }
    }

    pub fn unit(&self) -> IrrepLabel {
        match &self.rules {
            FusionRules::Su2Type => IrrepLabel::Spin(0),
            FusionRules::FreePower => IrrepLabel::Word(Word::unit()),
            FusionRules::Table(t) => IrrepLabel::key(t.unit()),
        }
    }

    /// Parses a label in this system's syntax: `u3` or `3` for spins, words
    /// over `g`/`G`(`ḡ`), or a table key.
    pub fn parse_label(&self, s: &str) -> Result<IrrepLabel> {
        let s = s.trim();
        let label = match &self.rules {
            FusionRules::Su2Type => {
                let digits = s.strip_prefix('u').unwrap_or(s);
                digits
                    .parse::<u32>()
                    .map(IrrepLabel::Spin)
                    .map_err(|_| Error::UnknownLabel(s.to_string()))?
            }
            FusionRules::FreePower => Word::parse(s)
                .map(IrrepLabel::Word)
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))?,
            FusionRules::Table(_) => IrrepLabel::key(s),
        };
        self.check_label(&label)?;
        Ok(label)
    }

    pub fn check_label(&self, a: &IrrepLabel) -> Result<()> {
        let ok = match (&self.rules, a) {
            (FusionRules::Su2Type, IrrepLabel::Spin(_)) => true,
            (FusionRules::FreePower, IrrepLabel::Word(_)) => true,
            (FusionRules::Table(t), IrrepLabel::Key(k)) => t.contains(k),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownLabel(a.to_string()))
        }
    }

    pub fn dual(&self, a: &IrrepLabel) -> Result<IrrepLabel> {
        self.check_label(a)?;
        Ok(match (&self.rules, a) {
            (FusionRules::FreePower, IrrepLabel::Word(w)) => IrrepLabel::Word(w.conjugate()),
            (FusionRules::Table(t), IrrepLabel::Key(k)) => {
                IrrepLabel::key(t.dual(k).expect("checked label"))
            }
            _ => a.clone(),
        })
    }

    /// Decomposition of `a ⊗ b` into irreducibles.
    pub fn fuse(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<MultiplicityVector> {
        self.check_label(a)?;
        self.check_label(b)?;
        match (&self.rules, a, b) {
            (FusionRules::Su2Type, IrrepLabel::Spin(x), IrrepLabel::Spin(y)) => {
                let (x, y) = (*x, *y);
                let lo = x.abs_diff(y);
                let hi = x.checked_add(y).ok_or_else(|| Error::Overflow(a.to_string()))?;
                Ok(MultiplicityVector::from_pairs(
                    (lo..=hi).step_by(2).map(|r| (IrrepLabel::Spin(r), 1)),
                ))
            }
            (FusionRules::FreePower, IrrepLabel::Word(x), IrrepLabel::Word(y)) => {
                if x.is_empty() {
                    return Ok(MultiplicityVector::single(b.clone()));
                }
                if y.is_empty() {
                    return Ok(MultiplicityVector::single(a.clone()));
                }
                match (x.as_power(), y.as_power()) {
                    (Some((lx, nx)), Some((ly, ny))) if lx == ly => Ok(MultiplicityVector::single(
                        IrrepLabel::Word(Word::power(lx, nx + ny)),
                    )),
                    _ => Err(Error::MixedWord(format!("{x} ⊗ {y}"))),
                }
            }
            (FusionRules::Table(t), IrrepLabel::Key(x), IrrepLabel::Key(y)) => t.fuse(x, y),
            _ => unreachable!("labels checked above"),
        }
    }

    /// Full decomposition of `x ⊗ y` for reducible `x`, `y`.
    pub fn tensor(&self, x: &MultiplicityVector, y: &MultiplicityVector) -> Result<MultiplicityVector> {
        let mut out = MultiplicityVector::new();
        for (a, ka) in x.iter() {
            for (b, kb) in y.iter() {
                let k = ka
                    .checked_mul(kb)
                    .ok_or_else(|| Error::Overflow(format!("{a} ⊗ {b}")))?;
                for (c, n) in self.fuse(a, b)?.iter() {
                    let m = n
                        .checked_mul(k)
                        .ok_or_else(|| Error::Overflow(format!("{a} ⊗ {b}")))?;
                    out.add(c.clone(), m)?;
                }
                self.check_support(&out)?;
            }
        }
        Ok(out)
    }

    fn check_support(&self, m: &MultiplicityVector) -> Result<()> {
        if m.support_len() > self.max_support {
            return Err(Error::SupportLimit { size: m.support_len(), cap: self.max_support });
        }
        Ok(())
    }

    /// Decomposition of `u^{⊗n}`; `n = 0` gives the unit.
    pub fn decompose_power(&self, u: &IrrepLabel, n: usize) -> Result<MultiplicityVector> {
        Ok(self.power_tower(u, n)?.pop().expect("tower has n+1 entries"))
    }

    /// `[u^{⊗0}, u^{⊗1}, …, u^{⊗n}]`, each fully decomposed.
    pub fn power_tower(&self, u: &IrrepLabel, n: usize) -> Result<Vec<MultiplicityVector>> {
        self.check_label(u)?;
        if let (FusionRules::FreePower, IrrepLabel::Word(w)) = (&self.rules, u) {
            if !w.is_empty() && w.as_power().is_none() {
                return Err(Error::MixedWord(w.to_string()));
            }
        }
        let single = MultiplicityVector::single(u.clone());
        let mut tower = Vec::with_capacity(n + 1);
        tower.push(MultiplicityVector::single(self.unit()));
        for _ in 0..n {
            let next = self.tensor(tower.last().expect("nonempty"), &single)?;
            tower.push(next);
        }
        Ok(tower)
    }

    /// Labels reachable as summands of `g^{⊗k}` for the system's generators,
    /// `k ≤ depth`, in canonical order. Table systems return every key.
    pub fn tower_labels(&self, depth: usize) -> Vec<IrrepLabel> {
        match &self.rules {
            FusionRules::Su2Type => (0..=depth as u32).map(IrrepLabel::Spin).collect(),
            FusionRules::FreePower => {
                let mut v = vec![IrrepLabel::Word(Word::unit())];
                for k in 1..=depth {
                    v.push(IrrepLabel::Word(Word::power(Letter::G, k)));
                    v.push(IrrepLabel::Word(Word::power(Letter::GBar, k)));
                }
                v.sort();
                v
            }
            FusionRules::Table(t) => {
                let set: BTreeSet<IrrepLabel> = t.keys().map(|k| IrrepLabel::key(k.clone())).collect();
                set.into_iter().collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: u32) -> IrrepLabel {
        IrrepLabel::spin(r)
    }

    fn s3_table() -> FusionTable {
        let duals: BTreeMap<String, String> =
            ["1", "sgn", "std"].iter().map(|k| (k.to_string(), k.to_string())).collect();
        let e = |a: &str, b: &str, out: &[(&str, u64)]| {
            (a.to_string(), b.to_string(), out.iter().map(|(c, m)| (c.to_string(), *m)).collect())
        };
        FusionTable::new(
            "1".into(),
            duals,
            vec![
                e("sgn", "sgn", &[("1", 1)]),
                e("sgn", "std", &[("std", 1)]),
                e("std", "sgn", &[("std", 1)]),
                e("std", "std", &[("1", 1), ("sgn", 1), ("std", 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn clebsch_gordan() {
        let sys = FusionSystem::su2_type();
        assert_eq!(sys.fuse(&s(1), &s(1)).unwrap(), MultiplicityVector::from_pairs([(s(0), 1), (s(2), 1)]));
        assert_eq!(
            sys.fuse(&s(2), &s(3)).unwrap(),
            MultiplicityVector::from_pairs([(s(1), 1), (s(3), 1), (s(5), 1)])
        );
        assert_eq!(sys.fuse(&s(0), &s(7)).unwrap(), MultiplicityVector::single(s(7)));
    }

    #[test]
    fn free_power_rules() {
        let sys = FusionSystem::free_power();
        let g = IrrepLabel::word("g");
        assert_eq!(sys.fuse(&g, &g).unwrap(), MultiplicityVector::single(IrrepLabel::word("gg")));
        assert_eq!(
            sys.decompose_power(&g, 4).unwrap(),
            MultiplicityVector::single(IrrepLabel::word("gggg"))
        );
        let gb = IrrepLabel::word("G");
        assert!(matches!(sys.fuse(&g, &gb), Err(Error::MixedWord(_))));
        assert!(matches!(sys.decompose_power(&IrrepLabel::word("gG"), 2), Err(Error::MixedWord(_))));
        assert_eq!(sys.dual(&IrrepLabel::word("gḡg")).unwrap(), IrrepLabel::word("ḡgḡ"));
        assert_eq!(sys.fuse(&sys.unit(), &IrrepLabel::word("gG")).unwrap(), MultiplicityVector::single(IrrepLabel::word("gG")));
    }

    #[test]
    fn power_zero_is_unit() {
        for sys in [FusionSystem::su2_type(), FusionSystem::free_power(), FusionSystem::table(s3_table())] {
            let u = sys.tower_labels(1).last().unwrap().clone();
            assert_eq!(sys.decompose_power(&u, 0).unwrap(), MultiplicityVector::single(sys.unit()));
        }
    }

    #[test]
    fn table_fusion() {
        let sys = FusionSystem::table(s3_table());
        let std = IrrepLabel::key("std");
        let p = sys.decompose_power(&std, 3).unwrap();
        // std^3 = 2 std ⊕ (1 ⊕ sgn ⊕ std) ⊗ ... : dims must be 8
        let dim = |k: &IrrepLabel| match k.to_string().as_str() {
            "std" => 2u128,
            _ => 1,
        };
        assert_eq!(p.iter().map(|(l, m)| m * dim(l)).sum::<u128>(), 8);
        assert!(matches!(sys.fuse(&std, &IrrepLabel::key("x")), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn table_validation_names_entry() {
        let duals: BTreeMap<String, String> =
            [("1", "1"), ("a", "b"), ("b", "b")].iter().map(|(k, d)| (k.to_string(), d.to_string())).collect();
        let err = FusionTable::new("1".into(), duals, vec![]).unwrap_err();
        assert!(err.to_string().contains("irrep `a`"), "{err}");

        let duals: BTreeMap<String, String> =
            [("1", "1"), ("a", "a")].iter().map(|(k, d)| (k.to_string(), d.to_string())).collect();
        let err = FusionTable::new(
            "1".into(),
            duals.clone(),
            vec![("1".into(), "a".into(), vec![("1".into(), 1)])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("fusion[0]"), "{err}");
        let sys = FusionSystem::table(FusionTable::new("1".into(), duals, vec![]).unwrap());
        let a = IrrepLabel::key("a");
        assert!(matches!(sys.fuse(&a, &a), Err(Error::MissingFusion { .. })));
    }

    #[test]
    fn support_cap_is_an_error() {
        let sys = FusionSystem::su2_type().with_max_support(5);
        assert!(sys.decompose_power(&s(1), 8).is_ok());
        assert!(matches!(
            sys.decompose_power(&s(1), 10),
            Err(Error::SupportLimit { cap: 5, .. })
        ));
    }

    #[test]
    fn multiplicity_vector_serde() {
        let m = MultiplicityVector::from_pairs([(s(1), 2), (s(3), 1)]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[{"irrep":{"spin":1},"mult":2},{"irrep":{"spin":3},"mult":1}]"#);
        assert_eq!(serde_json::from_str::<MultiplicityVector>(&json).unwrap(), m);
        assert_eq!(m.to_string(), "2·u1 + u3");
    }
}
