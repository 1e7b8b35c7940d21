//! The shift `σ` on finitely supported sequences over a coefficient group `A`, with the
//! kernel and cokernel of `1 − σ`. `A` stands in for `K_*(C*(G))` and is supplied by the caller.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sample::rng;

/// `ℤ^rank ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// Coordinates in `CoeffGroup`, torsion parts reduced to `0..t`.
pub type Coeff = Vec<i64>;

impl CoeffGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(t) = torsion.iter().find(|&&t| t < 2 || t > i64::MAX as u64) {
            return Err(Error::Config(format!("torsion order {t} must be at least 2")));
        }
        Ok(CoeffGroup { rank, torsion })
    }

    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn zero(&self) -> Coeff {
        vec![0; self.dim()]
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn reduce(&self, mut x: Coeff) -> Coeff {
        for (i, &t) in self.torsion.iter().enumerate() {
            x[self.rank + i] = x[self.rank + i].rem_euclid(t as i64);
        }
        x
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Coeff {
        self.reduce(x.iter().zip(y).map(|(a, b)| a.checked_add(*b).expect("coefficient overflow")).collect())
    }

    pub fn neg(&self, x: &[i64]) -> Coeff {
        self.reduce(x.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Coeff {
        self.add(x, &self.neg(y))
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    pub fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> Coeff {
        let raw = (0..self.dim()).map(|_| rng.gen_range(-bound..=bound)).collect();
        self.reduce(raw)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A finitely supported sequence `(x_0, x_1, …)`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinSeq {
    pub entries: BTreeMap<u64, Coeff>,
}

impl Serialize for FinSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter())
    }
}

impl FinSeq {
    pub fn from_entries(grp: &CoeffGroup, entries: impl IntoIterator<Item = (u64, Coeff)>) -> Self {
        let mut out = FinSeq::default();
        for (k, v) in entries {
            out.add_at(grp, k, &v);
        }
        out
    }

    pub fn single(grp: &CoeffGroup, a: Coeff) -> Self {
        FinSeq::from_entries(grp, [(0, a)])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, grp: &CoeffGroup, k: u64) -> Coeff {
        self.entries.get(&k).cloned().unwrap_or_else(|| grp.zero())
    }

    fn add_at(&mut self, grp: &CoeffGroup, k: u64, v: &[i64]) {
        let sum = grp.add(&self.get(grp, k), v);
        if grp.is_zero(&sum) {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, sum);
        }
    }
}

/// `y_k = x_k − x_{k−1}` with `x_{−1} = 0`.
pub fn one_minus_sigma(grp: &CoeffGroup, x: &FinSeq) -> FinSeq {
    let mut out = x.clone();
    for (&k, v) in &x.entries {
        out.add_at(grp, k + 1, &grp.neg(v));
    }
    out
}

/// The unique `x` with `(1 − σ)x = y`, namely `x_k = Σ_{j≤k} y_j`; `None` when that
/// sequence is not finitely supported, i.e. when `y` is not in the image.
pub fn solve_recurrence(grp: &CoeffGroup, y: &FinSeq) -> Option<FinSeq> {
    let mut out = FinSeq::default();
    let mut run = grp.zero();
    let mut next = 0u64;
    for (&k, v) in &y.entries {
        // The partial sum is constant between support points.
        if !grp.is_zero(&run) {
            for j in next..k {
                out.add_at(grp, j, &run);
            }
        }
        run = grp.add(&run, v);
        out.add_at(grp, k, &run);
        next = k + 1;
    }
    grp.is_zero(&run).then_some(out)
}

/// `x ↦ Σ_k x_k`, which induces `coker(1 − σ) ≅ A`.
pub fn cokernel_class(grp: &CoeffGroup, x: &FinSeq) -> Coeff {
    x.entries.values().fold(grp.zero(), |acc, v| grp.add(&acc, v))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelProbe {
    pub group: String,
    pub samples: usize,
    pub adversarial: usize,
    /// Nonzero `x` with `(1 − σ)x = 0`.
    pub kernel_violations: Vec<FinSeq>,
    /// `x` for which the recurrence does not give back `x` from `(1 − σ)x`.
    pub recurrence_violations: Vec<FinSeq>,
    /// `y` with `Σ (1 − σ)y ≠ 0`.
    pub exactness_violations: Vec<FinSeq>,
    pub section_violations: Vec<Coeff>,
}

impl KernelProbe {
    pub fn passed(&self) -> bool {
        self.kernel_violations.is_empty()
            && self.recurrence_violations.is_empty()
            && self.exactness_violations.is_empty()
            && self.section_violations.is_empty()
    }
}

fn random_seq<R: Rng>(grp: &CoeffGroup, rng: &mut R) -> FinSeq {
    let len = rng.gen_range(0..8u64);
    let offset = rng.gen_range(0..4u64);
    FinSeq::from_entries(grp, (0..len).map(|k| (offset + k, grp.random(rng, 5))))
}

/// Constant blocks, alternating signs, torsion multiples and long gaps: the shapes most
/// likely to make `x_k − x_{k−1}` cancel.
fn adversarial(grp: &CoeffGroup) -> Vec<FinSeq> {
    let mut out = Vec::new();
    let dim = grp.dim();
    for c in 0..dim {
        let mut a = grp.zero();
        a[c] = 1;
        let mut t = grp.zero();
        t[c] = if c >= grp.rank { grp.torsion[c - grp.rank] as i64 - 1 } else { -1 };
        let t = grp.reduce(t);
        for len in 1..6u64 {
            out.push(FinSeq::from_entries(grp, (0..len).map(|k| (k, a.clone()))));
            out.push(FinSeq::from_entries(
                grp,
                (0..len).map(|k| (k, if k % 2 == 0 { a.clone() } else { grp.neg(&a) })),
            ));
            out.push(FinSeq::from_entries(grp, [(0, a.clone()), (len * 1000, t.clone())]));
        }
    }
    out
}

pub fn kernel_probe(grp: &CoeffGroup, samples: usize, seed: u64) -> KernelProbe {
    let mut r = rng(seed);
    let adv = adversarial(grp);
    let mut report = KernelProbe {
        group: grp.describe(),
        samples,
        adversarial: adv.len(),
        kernel_violations: Vec::new(),
        recurrence_violations: Vec::new(),
        exactness_violations: Vec::new(),
        section_violations: Vec::new(),
    };
    let random: Vec<FinSeq> = (0..samples).map(|_| random_seq(grp, &mut r)).collect();
    for x in adv.into_iter().chain(random) {
        let y = one_minus_sigma(grp, &x);
        if y.is_zero() && !x.is_zero() {
            report.kernel_violations.push(x.clone());
        }
        if solve_recurrence(grp, &y).as_ref() != Some(&x) {
            report.recurrence_violations.push(x.clone());
        }
        if !grp.is_zero(&cokernel_class(grp, &y)) {
            report.exactness_violations.push(x.clone());
        }
        let a = grp.random(&mut r, 9);
        if cokernel_class(grp, &FinSeq::single(grp, a.clone())) != a {
            report.section_violations.push(a);
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SixTermSummary {
    pub coefficients: CoeffGroup,
    pub kernel: String,
    pub cokernel: String,
    pub isomorphism: String,
    pub conclusion: String,
    pub probe: KernelProbe,
}

impl SixTermSummary {
    pub fn passed(&self) -> bool {
        self.probe.passed()
    }
}

pub fn six_term_summary(grp: &CoeffGroup, samples: usize, seed: u64) -> SixTermSummary {
    let probe = kernel_probe(grp, samples, seed);
    let a = grp.describe();
    SixTermSummary {
        coefficients: grp.clone(),
        kernel: "ker(1 - sigma) = 0".into(),
        cokernel: format!("coker(1 - sigma) = {a}"),
        isomorphism: "[(x_0, x_1, ...)] -> x_0 + x_1 + ..., with section a -> (a, 0, 0, ...)".into(),
        conclusion: format!("K_*(U[phi]) = K_*(C*(G)) = {a}"),
        probe,
    }
}
