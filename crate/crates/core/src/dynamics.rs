//! Invertible finite-state dynamics and their decomposition into orbits.
//!
//! A [`ClassicalDynamics`] is a permutation of the configuration indices
//! `0..num_states`. Repeated application partitions the configurations into
//! disjoint cycles; each cycle is an [`Orbit`] with its members listed in
//! update order, starting from the smallest configuration index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest state space accepted by [`decompose_orbits`].
pub const MAX_DECOMPOSE_STATES: usize = 1_000_000;

/// Largest site count accepted by [`from_two_channel_lga`] (4^12 configurations).
pub const MAX_LGA_SITES: usize = 12;

/// A validated bijection on `0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalDynamics {
    image: Vec<usize>,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl ClassicalDynamics {
    pub fn num_states(&self) -> usize {
        self.image.len()
    }

    /// Successor of `state` after one update.
    pub fn image(&self, state: usize) -> usize {
        self.image[state]
    }

    /// Predecessor of `state`.
    pub fn preimage(&self, state: usize) -> usize {
        self.inverse[state]
    }

    pub fn image_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn label(&self, state: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[state].as_str())
    }

    /// Attach a human-readable name to every state.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.image.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: self.image.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }
}

/// Build dynamics from an explicit successor table.
pub fn from_permutation(image: Vec<usize>) -> Result<ClassicalDynamics> {
    if image.is_empty() {
        return Err(Error::NotBijective("empty state space".into()));
    }
    let n = image.len();
    let mut inverse = vec![usize::MAX; n];
    for (state, &next) in image.iter().enumerate() {
        if next >= n {
            return Err(Error::NotBijective(format!(
                "image of {state} is {next}, outside 0..{n}"
            )));
        }
        if inverse[next] != usize::MAX {
            return Err(Error::NotBijective(format!(
                "{next} is the image of both {} and {state}",
                inverse[next]
            )));
        }
        inverse[next] = state;
    }
    Ok(ClassicalDynamics {
        image,
        inverse,
        labels: None,
    })
}

/// A single particle hopping one site in the +x direction per update on a ring.
pub fn from_particle_shift(sites: usize) -> Result<ClassicalDynamics> {
    if sites == 0 {
        return Err(Error::InvalidArgument(
            "ring needs at least one site".into(),
        ));
    }
    from_permutation((0..sites).map(|i| (i + 1) % sites).collect())
}

/// Bit mask of the right-moving channel at `site`.
pub fn lga_right_bit(site: usize) -> usize {
    1 << (2 * site)
}

/// Bit mask of the left-moving channel at `site`.
pub fn lga_left_bit(site: usize) -> usize {
    1 << (2 * site + 1)
}

/// One update of the two-channel lattice gas on a ring of `sites` sites.
///
/// Each channel advects one site in its direction. With `reflect`, a site
/// holding exactly one particle afterwards flips that particle's direction.
pub fn lga_update(config: usize, sites: usize, reflect: bool) -> usize {
    let mut next = 0;
    for site in 0..sites {
        if config & lga_right_bit(site) != 0 {
            next |= lga_right_bit((site + 1) % sites);
        }
        if config & lga_left_bit(site) != 0 {
            next |= lga_left_bit((site + sites - 1) % sites);
        }
    }
    if reflect {
        for site in 0..sites {
            let pair = lga_right_bit(site) | lga_left_bit(site);
            let occupied = next & pair;
            if occupied != 0 && occupied != pair {
                next ^= pair;
            }
        }
    }
    next
}

fn lga_label(config: usize, sites: usize) -> String {
    (0..sites)
        .map(|site| {
            match (
                config & lga_right_bit(site) != 0,
                config & lga_left_bit(site) != 0,
            ) {
                (false, false) => '.',
                (true, false) => '>',
                (false, true) => '<',
                (true, true) => 'x',
            }
        })
        .collect()
}

/// Reversible two-channel lattice gas on a ring, enumerated over all 4^sites
/// configurations.
pub fn from_two_channel_lga(sites: usize, reflect: bool) -> Result<ClassicalDynamics> {
    if sites > MAX_LGA_SITES {
        return Err(Error::TooLarge {
            what: "lattice gas site count",
            size: sites,
            limit: MAX_LGA_SITES,
        });
    }
    if sites == 0 {
        return Err(Error::InvalidArgument(
            "lattice gas needs at least one site".into(),
        ));
    }
    let count = 1usize << (2 * sites);
    let image = (0..count).map(|c| lga_update(c, sites, reflect)).collect();
    let labels = (0..count).map(|c| lga_label(c, sites)).collect();
    from_permutation(image)?.with_labels(labels)
}

/// One cycle of the dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    id: usize,
    members: Vec<usize>,
    tau: f64,
}

impl Orbit {
    /// Build an orbit directly. `members` must be non-empty and `tau` positive.
    pub fn new(id: usize, members: Vec<usize>, tau: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("orbit must have a member".into()));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tau must be positive, got {tau}"
            )));
        }
        Ok(Self { id, members, tau })
    }

    /// A bare orbit of the given length with members `0..len`.
    pub fn of_length(len: usize, tau: f64) -> Result<Self> {
        Self::new(0, (0..len).collect(), tau)
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// T_d = N_d·τ.
    pub fn period(&self) -> f64 {
        self.len() as f64 * self.tau
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        assert!(tau.is_finite() && tau > 0.0, "tau must be positive");
        self.tau = tau;
        self
    }

    /// Position of `state` within the orbit, if it is a member.
    pub fn position(&self, state: usize) -> Option<usize> {
        self.members.iter().position(|&s| s == state)
    }
}

/// The partition of a state space into orbits, ordered by smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDecomposition {
    orbits: Vec<Orbit>,
    // state -> (orbit id, position in orbit)
    state_to_orbit: Vec<(usize, usize)>,
}

impl OrbitDecomposition {
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn into_orbits(self) -> Vec<Orbit> {
        self.orbits
    }

    pub fn locate(&self, state: usize) -> Option<(usize, usize)> {
        self.state_to_orbit.get(state).copied()
    }

    pub fn orbit_containing(&self, state: usize) -> Option<&Orbit> {
        self.locate(state).map(|(d, _)| &self.orbits[d])
    }

    pub fn num_states(&self) -> usize {
        self.state_to_orbit.len()
    }

    pub fn with_tau(self, tau: f64) -> Self {
        Self {
            orbits: self.orbits.into_iter().map(|o| o.with_tau(tau)).collect(),
            state_to_orbit: self.state_to_orbit,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct OrbitRecord {
    id: usize,
    members: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionRecord {
    orbits: Vec<OrbitRecord>,
}

impl Serialize for OrbitDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DecompositionRecord {
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitRecord {
                    id: o.id,
                    members: o.members.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Partition the dynamics into cycles. Orbit time step defaults to τ = 1;
/// use [`OrbitDecomposition::with_tau`] to rescale.
pub fn decompose_orbits(dynamics: &ClassicalDynamics) -> Result<OrbitDecomposition> {
    let n = dynamics.num_states();
    if n > MAX_DECOMPOSE_STATES {
        return Err(Error::TooLarge {
            what: "state space",
            size: n,
            limit: MAX_DECOMPOSE_STATES,
        });
    }
    let mut state_to_orbit = vec![(usize::MAX, usize::MAX); n];
    let mut orbits = Vec::new();
    for leader in 0..n {
        if state_to_orbit[leader].0 != usize::MAX {
            continue;
        }
        // every smaller state is already assigned, so `leader` is this cycle's minimum
        let id = orbits.len();
        let mut members = Vec::new();
        let mut s = leader;
        loop {
            state_to_orbit[s] = (id, members.len());
            members.push(s);
            s = dynamics.image(s);
            if s == leader {
                break;
            }
        }
        orbits.push(Orbit {
            id,
            members,
            tau: 1.0,
        });
    }
    Ok(OrbitDecomposition {
        orbits,
        state_to_orbit,
    })
}

/// Extract the single cycle containing `start`, canonically rotated so the
/// smallest member comes first. The orbit id is its rank among all cycles
/// ordered by smallest member, matching [`decompose_orbits`].
pub fn orbit_of(dynamics: &ClassicalDynamics, start: usize) -> Result<Orbit> {
    let n = dynamics.num_states();
    if start >= n {
        return Err(Error::IndexOutOfRange {
            index: start,
            len: n,
        });
    }
    let mut cycle = vec![start];
    let mut s = dynamics.image(start);
    while s != start {
        if cycle.len() >= n {
            return Err(Error::NoReturn { start, limit: n });
        }
        cycle.push(s);
        s = dynamics.image(s);
    }
    let (lead_pos, &leader) = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &s)| s)
        .expect("cycle is non-empty");
    cycle.rotate_left(lead_pos);

    // rank = number of cycles whose minimum lies below `leader`
    let mut seen = vec![false; leader];
    let mut id = 0;
    for s0 in 0..leader {
        if seen[s0] {
            continue;
        }
        id += 1;
        let mut s = s0;
        loop {
            if s < leader {
                seen[s] = true;
            }
            s = dynamics.image(s);
            if s == s0 {
                break;
            }
        }
    }
    Ok(Orbit {
        id,
        members: cycle,
        tau: 1.0,
    })
}

/// Apply the dynamics `count` times; negative counts step backwards.
pub fn step(dynamics: &ClassicalDynamics, config: usize, count: i64) -> Result<usize> {
    let n = dynamics.num_states();
    if config >= n {
        return Err(Error::IndexOutOfRange {
            index: config,
            len: n,
        });
    }
    let mut remaining = count.unsigned_abs();
    if remaining > n as u64 {
        let mut len = 1u64;
        let mut s = dynamics.image(config);
        while s != config {
            s = dynamics.image(s);
            len += 1;
        }
        remaining %= len;
    }
    let mut s = config;
    for _ in 0..remaining {
        s = if count >= 0 {
            dynamics.image(s)
        } else {
            dynamics.preimage(s)
        };
    }
    Ok(s)
}

/// Dynamics file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DynamicsFile {
    Permutation { image: Vec<usize> },
    Shift { sites: usize },
    Lga { sites: usize, reflect: bool },
}

impl DynamicsFile {
    pub fn build(&self) -> Result<ClassicalDynamics> {
        match self {
            DynamicsFile::Permutation { image } => from_permutation(image.clone()),
            DynamicsFile::Shift { sites } => from_particle_shift(*sites),
            DynamicsFile::Lga { sites, reflect } => from_two_channel_lga(*sites, *reflect),
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
