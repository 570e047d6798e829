//! Oracles shared by the integration tests. They are written against the
//! public types only and do not reuse the lookahead or chain code they check.

#![allow(dead_code)]

use ipd::game::{Action, JointOutcome, PayoffMatrix};
use ipd::predictor::Exact;
use ipd::rng::RngStream;
use ipd::strategy::MemoryOneStrategy;
use num_traits::{One, Zero};

fn payoff(pm: &PayoffMatrix, own: Action, opp: Action) -> Exact {
    let p = pm.own(JointOutcome::new(own, opp));
    Exact::new(i128::from(*p.numer()), i128::from(*p.denom()))
}

/// Expected total payoff of the fixed action sequence `course`, starting
/// from `x0`, when the opponent cooperates with `probs[state]` after each
/// state (focal orientation). Tracks the full distribution over states.
pub fn course_value(probs: &[Exact; 4], x0: JointOutcome, course: &[Action], pm: &PayoffMatrix) -> Exact {
    let mut dist = [Exact::zero(); 4];
    dist[x0.index()] = Exact::one();
    let mut total = Exact::zero();
    for &own in course {
        let mut next = [Exact::zero(); 4];
        for (s, w) in dist.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for opp in [Action::C, Action::D] {
                let p = if opp == Action::C {
                    probs[s]
                } else {
                    Exact::one() - probs[s]
                };
                let mass = *w * p;
                total += mass * payoff(pm, own, opp);
                next[JointOutcome::new(own, opp).index()] += mass;
            }
        }
        dist = next;
    }
    total
}

/// All action sequences of length `depth`.
pub fn all_courses(depth: usize) -> Vec<Vec<Action>> {
    (0..1usize << depth)
        .map(|bits| {
            (0..depth)
                .map(|k| if bits >> (depth - 1 - k) & 1 == 0 { Action::C } else { Action::D })
                .collect()
        })
        .collect()
}

/// First action of the best course; ties between a C-course and a D-course
/// go to D.
pub fn best_first_action(courses: &[Vec<Action>], probs: &[Exact; 4], x0: JointOutcome, pm: &PayoffMatrix) -> Action {
    let best = |first: Action| {
        courses
            .iter()
            .filter(|c| c[0] == first)
            .map(|c| course_value(probs, x0, c, pm))
            .max()
            .expect("non-empty")
    };
    if best(Action::C) > best(Action::D) {
        Action::C
    } else {
        Action::D
    }
}

/// Depth-2 brute force over all four courses.
pub fn brute_force_decide(probs: &[Exact; 4], x0: JointOutcome, pm: &PayoffMatrix) -> Action {
    best_first_action(&all_courses(2), probs, x0, pm)
}

/// Depth-3 courses whose last move is D.
pub fn depth3_decide(probs: &[Exact; 4], x0: JointOutcome, pm: &PayoffMatrix) -> Action {
    let courses: Vec<Vec<Action>> = all_courses(3)
        .into_iter()
        .filter(|c| c[2] == Action::D)
        .collect();
    best_first_action(&courses, probs, x0, pm)
}

/// Random Laplace-style model probabilities `(1 + c) / (2 + n)`.
pub fn random_model_probs(rng: &mut RngStream, max_obs: usize) -> ([u32; 4], [u32; 4], [Exact; 4]) {
    let mut n = [0u32; 4];
    let mut c = [0u32; 4];
    let mut p = [Exact::zero(); 4];
    for s in 0..4 {
        n[s] = rng.index(max_obs + 1) as u32;
        c[s] = rng.index(n[s] as usize + 1) as u32;
        p[s] = Exact::new(1 + i128::from(c[s]), 2 + i128::from(n[s]));
    }
    (n, c, p)
}

/// Independent recount of `(state, next opponent action)` pairs of a trace
/// given in the focal player's orientation.
pub fn recount(trace: &[(Action, Action)]) -> ([u32; 4], [u32; 4]) {
    let mut n = [0u32; 4];
    let mut c = [0u32; 4];
    for w in trace.windows(2) {
        let s = JointOutcome::new(w[0].0, w[0].1).index();
        n[s] += 1;
        if w[1].1 == Action::C {
            c[s] += 1;
        }
    }
    (n, c)
}

/// Plays two memory-one strategies for `turns` rounds and returns the mean
/// payoffs. Starts from the strategies' initial policies.
pub fn simulate_pair(x: &MemoryOneStrategy, y: &MemoryOneStrategy, turns: u64, seed: u64, pm: &PayoffMatrix) -> (f64, f64) {
    let mut rng = RngStream::new(seed);
    let mut a = x.initial_action(&mut rng, false);
    let mut b = y.initial_action(&mut rng, false);
    let (mut sx, mut sy) = (0.0, 0.0);
    for t in 0..turns {
        if t > 0 {
            let na = x.next_action(JointOutcome::new(a, b), &mut rng);
            let nb = y.next_action(JointOutcome::new(b, a), &mut rng);
            a = na;
            b = nb;
        }
        let (px, py) = pm.payoff_f64(JointOutcome::new(a, b));
        sx += px;
        sy += py;
    }
    (sx / turns as f64, sy / turns as f64)
}
