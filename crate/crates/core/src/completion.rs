//! Bruns-Lakser completion: the downsets of the join-irreducibles of a
//! finite poset. On an rdp this splits events by causal history.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::dsc::EventId;
use crate::error::{Error, Result};
use crate::nucleus::Nucleus;
use crate::order::classify::is_distributive;
use crate::order::{downsets, join_irreducibles, FiniteLattice, FinitePoset, SetLattice};
use crate::rdp::RdpLattice;

pub type DigestBytes = [u8; 32];

/// Names a join-irreducible state of an rdp: the event it adds and the state itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLabel {
    pub event: EventId,
    /// The join-irreducible state, events sorted.
    pub trace: Vec<EventId>,
    pub digest: Option<DigestBytes>,
    name: String,
}

impl TraceLabel {
    /// `event` when the event has a single history, otherwise `event[others]`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Trace events other than `event`.
    pub fn context(&self) -> Vec<&EventId> {
        self.trace.iter().filter(|e| **e != self.event).collect()
    }

    pub fn digest_hex(&self) -> Option<String> {
        self.digest.map(hex::encode)
    }
}

impl fmt::Display for TraceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug)]
pub struct BlLattice {
    source: FinitePoset,
    irreducibles: FinitePoset,
    irr_source: Vec<usize>,
    states: SetLattice,
    embedding: Vec<usize>,
    labels: Option<Vec<TraceLabel>>,
}

impl BlLattice {
    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    /// The join-irreducibles of the source, in their induced order.
    pub fn irreducibles(&self) -> &FinitePoset {
        &self.irreducibles
    }

    /// Source index of each irreducible.
    pub fn irreducible_sources(&self) -> &[usize] {
        &self.irr_source
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.states.lattice()
    }

    /// Elements as sets of irreducible indices.
    pub fn states(&self) -> &SetLattice {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lattice index of the image of each source element.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn labels(&self) -> Option<&[TraceLabel]> {
        self.labels.as_deref()
    }

    /// Lattice index of the principal downset of irreducible `j`.
    pub fn principal(&self, j: usize) -> usize {
        self.embedding[self.irr_source[j]]
    }

    /// Image of source element `x` under a monotone source endomap `f`,
    /// extended to every element: irreducibles go through `f`, composites
    /// through joins of the images of their basis.
    pub fn lift_monotone(&self, f: &[usize]) -> Vec<usize> {
        let images: Vec<&BitSet> = self
            .irr_source
            .iter()
            .map(|&s| self.states.set(self.embedding[f[s]]))
            .collect();
        self.states
            .sets()
            .iter()
            .map(|d| {
                let mut u = BitSet::new();
                for j in d.iter() {
                    u.union_with(images[j]);
                }
                self.states.index_of(&u).expect("union of downsets is a downset")
            })
            .collect()
    }
}

fn build(source: FinitePoset, irreducibles: FinitePoset, irr_source: Vec<usize>, labels: Option<Vec<TraceLabel>>) -> BlLattice {
    let states = downsets(&irreducibles);
    let embedding = (0..source.len())
        .map(|x| {
            let below: BitSet = (0..irr_source.len()).filter(|&j| source.leq(irr_source[j], x)).collect();
            states.index_of(&below).expect("irreducibles below an element form a downset")
        })
        .collect();
    BlLattice { source, irreducibles, irr_source, states, embedding, labels }
}

pub fn bl_completion(p: &FinitePoset) -> BlLattice {
    let (irreducibles, irr_source) = join_irreducibles(p);
    build(p.clone(), irreducibles, irr_source, None)
}

/// Completion of an rdp with its irreducibles renamed to trace labels.
pub fn bl_of_rdp(r: &RdpLattice) -> BlLattice {
    let source = r.lattice().poset().clone();
    let (irreducibles, irr_source) = join_irreducibles(&source);
    let mut pending: Vec<(EventId, Vec<EventId>)> = Vec::with_capacity(irr_source.len());
    for &s in &irr_source {
        let lower = source.lower_covers(s);
        debug_assert_eq!(lower.len(), 1);
        let added = r.state(s).difference(r.state(lower[0]));
        debug_assert_eq!(added.len(), 1);
        let event = r.events()[added.first().expect("cover adds one event")].clone();
        pending.push((event, r.names(r.state(s))));
    }
    let mut histories: HashMap<&EventId, usize> = HashMap::new();
    for (e, _) in &pending {
        *histories.entry(e).or_default() += 1;
    }
    let names: Vec<String> = pending
        .iter()
        .map(|(e, trace)| {
            if histories[e] == 1 {
                e.to_string()
            } else {
                let ctx: Vec<&str> = trace.iter().filter(|t| *t != e).map(|t| t.as_str()).collect();
                format!("{}[{}]", e, ctx.join(","))
            }
        })
        .collect();
    let labels = pending
        .into_iter()
        .zip(&names)
        .map(|((event, trace), name)| TraceLabel { event, trace, digest: None, name: name.clone() })
        .collect();
    let irreducibles = irreducibles.with_ids(names).expect("trace names are distinct");
    build(source, irreducibles, irr_source, Some(labels))
}

/// Canonical digest input: 4-byte big-endian name length, the name bytes,
/// then the predecessor digests in ascending byte order.
pub fn digest_input(event: &str, predecessors: &[DigestBytes]) -> Vec<u8> {
    let mut sorted = predecessors.to_vec();
    sorted.sort();
    let mut buf = Vec::with_capacity(4 + event.len() + 32 * sorted.len());
    buf.extend_from_slice(&(event.len() as u32).to_be_bytes());
    buf.extend_from_slice(event.as_bytes());
    for d in &sorted {
        buf.extend_from_slice(d);
    }
    buf
}

/// Fills in a hash chain over the irreducibles: each digest covers the event
/// name and the digests of the irreducibles it covers.
pub fn merkle_digest(b: &BlLattice) -> Result<BlLattice> {
    let Some(labels) = &b.labels else {
        return Err(Error::MissingLabels);
    };
    let j = &b.irreducibles;
    let mut digests: Vec<DigestBytes> = Vec::with_capacity(j.len());
    // Indices are a linear extension, so predecessors are done first.
    for x in 0..j.len() {
        let preds: Vec<DigestBytes> = j.lower_covers(x).into_iter().map(|p| digests[p]).collect();
        let input = digest_input(labels[x].event.as_str(), &preds);
        digests.push(Sha256::digest(&input).into());
    }
    let mut seen: HashMap<DigestBytes, usize> = HashMap::new();
    for (x, d) in digests.iter().enumerate() {
        if let Some(&y) = seen.get(d) {
            return Err(Error::DigestCollision(labels[y].name.clone(), labels[x].name.clone()));
        }
        seen.insert(*d, x);
    }
    let mut out = b.clone();
    for (l, d) in out.labels.as_mut().expect("checked above").iter_mut().zip(digests) {
        l.digest = Some(d);
    }
    Ok(out)
}

/// The elements the topology must fix: the double basis, all joins of
/// double-basis elements, and all meets of those, with top and bottom.
pub fn topology_generators(l: &FiniteLattice) -> BitSet {
    let (j1, j1_in_l) = join_irreducibles(l.poset());
    // The least irreducible, if any, is not an empty join in `l`, so only
    // joins of non-empty sets count as reducible here.
    let basis: Vec<usize> = (0..j1.len())
        .filter(|&x| {
            let below = j1.strictly_below(x);
            below.is_empty() || j1.join_of(&below) != Some(x)
        })
        .map(|x| j1_in_l[x])
        .collect();
    let mut joins: BitSet = [l.bottom()].into_iter().collect();
    for &b in &basis {
        let next: Vec<usize> = joins.iter().map(|x| l.join(x, b)).collect();
        for x in next {
            joins.insert(x);
        }
    }
    joins.insert(l.top());
    close_under(l, joins, |l, x, y| l.meet(x, y))
}

fn close_under(l: &FiniteLattice, mut set: BitSet, op: impl Fn(&FiniteLattice, usize, usize) -> usize) -> BitSet {
    loop {
        let members = set.to_vec();
        let mut grew = false;
        for &x in &members {
            for &y in &members {
                grew |= set.insert(op(l, x, y));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Smallest set of fixed points of any nucleus containing `generators`:
/// closure under meets and under `x → f` for every `x` in the lattice.
pub fn nucleus_closure(l: &FiniteLattice, generators: &BitSet, implication: &[usize]) -> BitSet {
    let n = l.len();
    let mut set = generators.clone();
    set.insert(l.top());
    loop {
        let members = set.to_vec();
        let mut grew = false;
        for &f in &members {
            for x in 0..n {
                grew |= set.insert(implication[x * n + f]);
            }
            for &g in &members {
                grew |= set.insert(l.meet(f, g));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// The Bruns-Lakser topology: the nucleus fixing the double basis, its joins
/// and the meets of those, sending every other element to the meet of the
/// fixed elements above it.
///
/// When those generators alone are not closed under implication the literal
/// construction fails to preserve meets; the fixed set is then enlarged to
/// the least nucleus-closed set containing them.
pub fn bl_topology(l: &FiniteLattice) -> Result<Nucleus> {
    if !is_distributive(l) {
        return Err(Error::NotDistributive);
    }
    let implication = l.implication_table()?;
    let fixed = nucleus_closure(l, &topology_generators(l), &implication);
    Ok(Nucleus::from_fixed_set(l.clone(), &fixed))
}

/// The map exactly as the generators dictate, without the implication
/// closure. It need not preserve meets.
pub fn literal_topology(l: &FiniteLattice) -> Nucleus {
    Nucleus::from_fixed_set(l.clone(), &topology_generators(l))
}
