use serde::{Deserialize, Serialize};

use super::{Dyadic, FlowError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    /// Right end of the piece.
    pub end: Dyadic,
    pub slope: Dyadic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SignalSpec {
    Constant { value: Dyadic },
    /// `c₀ + c₁t + c₂t² + …`
    Polynomial { coefficients: Vec<Dyadic> },
    /// Starts at `initial`; piece `i` runs from the previous end to its own.
    PiecewiseLinear { initial: Dyadic, pieces: Vec<Piece> },
}

/// A continuous signal on `[0, end]`, exactly evaluable at dyadic times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SignalDoc")]
pub struct Signal {
    #[serde(flatten)]
    spec: SignalSpec,
    end: Dyadic,
}

#[derive(Deserialize)]
struct SignalDoc {
    #[serde(flatten)]
    spec: SignalSpec,
    end: Dyadic,
}

impl TryFrom<SignalDoc> for Signal {
    type Error = FlowError;

    fn try_from(d: SignalDoc) -> Result<Signal, FlowError> {
        Signal::new(d.spec, d.end)
    }
}

impl Signal {
    pub fn new(spec: SignalSpec, end: Dyadic) -> Result<Signal, FlowError> {
        if end.is_negative() {
            return Err(FlowError::BadSignal(format!("negative domain end {end}")));
        }
        if let SignalSpec::PiecewiseLinear { pieces, .. } = &spec {
            let mut prev = Dyadic::zero();
            for p in pieces {
                if p.end <= prev {
                    return Err(FlowError::BadSignal("breakpoints must increase from 0".into()));
                }
                prev = p.end.clone();
            }
            if prev < end {
                return Err(FlowError::BadSignal(format!("pieces stop at {prev} before {end}")));
            }
        }
        Ok(Signal { spec, end })
    }

    pub fn constant(value: Dyadic, end: Dyadic) -> Signal {
        Signal::new(SignalSpec::Constant { value }, end).expect("constant signal")
    }

    pub fn polynomial(coefficients: Vec<Dyadic>, end: Dyadic) -> Signal {
        Signal::new(SignalSpec::Polynomial { coefficients }, end).expect("polynomial signal")
    }

    /// `t ↦ t`.
    pub fn ramp(end: Dyadic) -> Signal {
        Signal::polynomial(vec![Dyadic::zero(), Dyadic::one()], end)
    }

    /// `t ↦ t²`.
    pub fn square(end: Dyadic) -> Signal {
        Signal::polynomial(vec![Dyadic::zero(), Dyadic::zero(), Dyadic::one()], end)
    }

    pub fn piecewise(initial: Dyadic, pieces: Vec<Piece>, end: Dyadic) -> Result<Signal, FlowError> {
        Signal::new(SignalSpec::PiecewiseLinear { initial, pieces }, end)
    }

    pub fn spec(&self) -> &SignalSpec {
        &self.spec
    }

    pub fn end(&self) -> &Dyadic {
        &self.end
    }

    /// The restriction to `[0, end]`; `None` if `end` exceeds the domain.
    pub fn restrict(&self, end: Dyadic) -> Option<Signal> {
        (end <= self.end && !end.is_negative()).then(|| Signal { spec: self.spec.clone(), end })
    }

    /// Exact value at `t`, or `None` outside `[0, end]`.
    pub fn eval(&self, t: &Dyadic) -> Option<Dyadic> {
        if t.is_negative() || *t > self.end {
            return None;
        }
        Some(match &self.spec {
            SignalSpec::Constant { value } => value.clone(),
            SignalSpec::Polynomial { coefficients } => coefficients
                .iter()
                .rev()
                .fold(Dyadic::zero(), |acc, c| &(&acc * t) + c),
            SignalSpec::PiecewiseLinear { initial, pieces } => {
                let mut value = initial.clone();
                let mut start = Dyadic::zero();
                for p in pieces {
                    if *t <= p.end {
                        return Some(&value + &(&p.slope * &(t - &start)));
                    }
                    value = &value + &(&p.slope * &(&p.end - &start));
                    start = p.end.clone();
                }
                value
            }
        })
    }

    /// `f(0), f(2^{-k}), …` up to the last grid point in the domain.
    pub fn samples(&self, k: u32) -> Vec<Dyadic> {
        let last = self.end.floor_shl(k);
        let mut out = Vec::new();
        let mut n: u64 = 0;
        while num_bigint::BigInt::from(n) <= last {
            out.push(self.eval(&Dyadic::grid(n, k)).expect("grid point in domain"));
            n += 1;
        }
        out
    }
}

/// A prefix-closed set of flows, given by generators; every restriction of
/// a generator is a member.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FlowSet {
    pub generators: Vec<Signal>,
}

impl FlowSet {
    pub fn new(generators: Vec<Signal>) -> FlowSet {
        FlowSet { generators }
    }

    /// `{1, t, t²}` on `[0, 1]`.
    pub fn standard() -> FlowSet {
        let one = Dyadic::one();
        FlowSet::new(vec![
            Signal::constant(one.clone(), one.clone()),
            Signal::ramp(one.clone()),
            Signal::square(one),
        ])
    }

    /// Members whose domain is exactly `[0, end]`.
    pub fn members_on(&self, end: &Dyadic) -> Vec<Signal> {
        self.generators.iter().filter_map(|g| g.restrict(end.clone())).collect()
    }

    pub fn contains(&self, f: &Signal) -> bool {
        self.generators
            .iter()
            .any(|g| g.spec == f.spec && f.end <= g.end)
    }
}
