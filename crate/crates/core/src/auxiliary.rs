//! Single-capacity packing routines: Next Fit with Cuts, First Fit, First Fit
//! Decreasing and Cut-and-First-Fit.
//!
//! These solve the auxiliary problem (minimise the number of bins) and are
//! reused as building blocks by the cost-aware solvers.

use crate::error::{Error, Result};
use crate::model::{Fragment, Instance, PackedBin, Packing};
use crate::scalar::Size;

/// A list of sizes to pack into bins of one capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformPackingRequest<S> {
    pub sizes: Vec<S>,
    pub capacity: S,
}

impl<S: Size> UniformPackingRequest<S> {
    pub fn new(sizes: Vec<S>, capacity: S) -> Self {
        UniformPackingRequest { sizes, capacity }
    }

    fn check(&self) -> Result<()> {
        if self.capacity.is_zero() {
            return Err(Error::Precondition("capacity must be positive".into()));
        }
        if let Some((i, s)) = self
            .sizes
            .iter()
            .enumerate()
            .find(|(_, &s)| s.is_zero() || s > self.capacity)
        {
            return Err(Error::Precondition(format!(
                "size {s} at position {} does not fit capacity {}",
                i + 1,
                self.capacity
            )));
        }
        Ok(())
    }

    fn fragments(&self) -> Vec<Fragment<S>> {
        self.sizes
            .iter()
            .enumerate()
            .map(|(i, &size)| Fragment { parent: i + 1, piece: 1, size })
            .collect()
    }
}

/// Bins under construction, all tracked with their current load.
#[derive(Debug, Clone)]
pub(crate) struct OpenBins<S> {
    pub bins: Vec<PackedBin<S>>,
    pub loads: Vec<S>,
}

impl<S: Size> OpenBins<S> {
    pub fn new() -> Self {
        OpenBins { bins: Vec::new(), loads: Vec::new() }
    }

    pub fn open(&mut self, class_index: usize) -> usize {
        self.bins.push(PackedBin::new(class_index));
        self.loads.push(S::zero());
        self.bins.len() - 1
    }

    /// Caller guarantees the fragment fits.
    pub fn put(&mut self, bin: usize, parent: usize, size: S) {
        self.bins[bin].fragments.push(Fragment { parent, piece: 0, size });
        self.loads[bin] = self.loads[bin] + size;
    }

    pub fn room(&self, bin: usize, capacity: S) -> S {
        capacity - self.loads[bin]
    }

    pub fn into_packing(self) -> Packing<S> {
        Packing::new(self.bins)
    }
}

/// First Fit of `fragments` (in the given order) into bins of `capacity`,
/// labelled with `class_index`. Returns the bins in opening order.
pub(crate) fn first_fit<S: Size>(
    fragments: impl IntoIterator<Item = Fragment<S>>,
    capacity: S,
    class_index: usize,
) -> Vec<PackedBin<S>> {
    let mut bins: Vec<PackedBin<S>> = Vec::new();
    let mut loads: Vec<S> = Vec::new();
    for frag in fragments {
        debug_assert!(frag.size <= capacity);
        match loads.iter().position(|&l| capacity - l >= frag.size) {
            Some(b) => {
                loads[b] = loads[b] + frag.size;
                bins[b].fragments.push(frag);
            }
            None => {
                loads.push(frag.size);
                bins.push(PackedBin { class_index, fragments: vec![frag] });
            }
        }
    }
    bins
}

/// First Fit Decreasing: stable sort by decreasing size, then First Fit.
pub(crate) fn first_fit_decreasing<S: Size>(
    fragments: impl IntoIterator<Item = Fragment<S>>,
    capacity: S,
    class_index: usize,
) -> Vec<PackedBin<S>> {
    let mut sorted: Vec<Fragment<S>> = fragments.into_iter().collect();
    sorted.sort_by_key(|f| std::cmp::Reverse(f.size));
    first_fit(sorted, capacity, class_index)
}

/// First Fit. Bin order is opening order; every bin has class index 0 and
/// fragments refer to 1-based positions in `req.sizes`.
pub fn pack_ff<S: Size>(req: &UniformPackingRequest<S>) -> Result<Packing<S>> {
    req.check()?;
    Ok(Packing::new(first_fit(req.fragments(), req.capacity, 0)))
}

/// First Fit Decreasing with ties kept in input order.
pub fn pack_ffd<S: Size>(req: &UniformPackingRequest<S>) -> Result<Packing<S>> {
    req.check()?;
    Ok(Packing::new(first_fit_decreasing(req.fragments(), req.capacity, 0)))
}

/// Next Fit with Cuts over bins of the largest class. Items are fed one at a
/// time; the stream keeps a single current bin and, when an item overflows
/// it, cuts the item at the boundary and continues in a fresh bin.
#[derive(Debug, Clone, Default)]
pub(crate) struct NfcStream {
    current: Option<usize>,
}

impl NfcStream {
    pub fn new() -> Self {
        NfcStream { current: None }
    }

    /// Packs `size <= capacity` of item `parent`. With `allow_cut` false an
    /// item that does not fit the current bin starts a new one whole.
    /// Returns the number of cuts made (0 or 1).
    pub fn push<S: Size>(
        &mut self,
        bins: &mut OpenBins<S>,
        class_index: usize,
        capacity: S,
        parent: usize,
        size: S,
        allow_cut: bool,
    ) -> u32 {
        debug_assert!(size <= capacity);
        let room = self.current.map_or(S::zero(), |b| bins.room(b, capacity));
        match self.current {
            Some(b) if size <= room => {
                bins.put(b, parent, size);
                0
            }
            Some(b) if allow_cut && !room.is_zero() => {
                bins.put(b, parent, room);
                let next = bins.open(class_index);
                bins.put(next, parent, size - room);
                self.current = Some(next);
                1
            }
            _ => {
                let next = bins.open(class_index);
                bins.put(next, parent, size);
                self.current = Some(next);
                0
            }
        }
    }
}

/// Next Fit with Cuts. Requires every item to fit whole into the largest bin;
/// uses only bins of the largest class. With a cut limit of 0 an item that
/// would straddle a boundary opens a new bin instead of being cut.
pub fn pack_nfc<S: Size>(instance: &Instance<S>) -> Result<Packing<S>> {
    if !instance.satisfies_strong_hypothesis() {
        return Err(Error::Precondition(format!(
            "NFC needs every item to fit the largest bin ({}), largest item is {}",
            instance.max_capacity(),
            instance.max_item_size().unwrap_or_default()
        )));
    }
    let capacity = instance.max_capacity();
    let allow_cut = instance.cut_limit() >= 1;
    let mut bins = OpenBins::new();
    let mut stream = NfcStream::new();
    for item in instance.items() {
        stream.push(&mut bins, 0, capacity, item.id, item.size, allow_cut);
    }
    let mut packing = bins.into_packing();
    renumber_pieces(&mut packing);
    Ok(packing)
}

/// Splits `size` into the fewest near-equal pieces (at most `max_pieces`)
/// that each fit `capacity`. Pieces differ by at most one, larger first.
pub fn near_equal_split<S: Size>(size: S, max_pieces: u32, capacity: S) -> Option<Vec<S>> {
    let mut p = 1u32;
    loop {
        let ps = S::from_u64(u64::from(p)).ok()?;
        if size.div_ceil_int(ps) <= capacity {
            let q = size / ps;
            let r = (size % ps).to_u64()?;
            return Some(
                (0..u64::from(p))
                    .map(|k| if k < r { q + S::one() } else { q })
                    .filter(|s| !s.is_zero())
                    .collect(),
            );
        }
        if p >= max_pieces {
            return None;
        }
        p += 1;
    }
}

/// Cut and First Fit: every item is split into the fewest near-equal pieces
/// that fit the largest bin, then the pieces are packed First Fit into
/// largest-class bins in arrival order.
pub fn pack_cff<S: Size>(instance: &Instance<S>) -> Result<Packing<S>> {
    let capacity = instance.max_capacity();
    let max_pieces = instance.cut_limit().saturating_add(1);
    let mut fragments = Vec::new();
    for item in instance.items() {
        let pieces = near_equal_split(item.size, max_pieces, capacity).ok_or_else(|| {
            Error::Precondition(format!("item {} cannot be split to fit capacity {capacity}", item.id))
        })?;
        fragments.extend(pieces.into_iter().map(|size| Fragment { parent: item.id, piece: 0, size }));
    }
    let mut packing = Packing::new(first_fit(fragments, capacity, 0));
    renumber_pieces(&mut packing);
    Ok(packing)
}

/// Assigns 1-based piece ordinals per parent in bin order.
pub(crate) fn renumber_pieces<S: Size>(packing: &mut Packing<S>) {
    let max_parent = packing
        .bins
        .iter()
        .flat_map(|b| &b.fragments)
        .map(|f| f.parent)
        .max()
        .unwrap_or(0);
    let mut next = vec![0u32; max_parent + 1];
    for f in packing.bins.iter_mut().flat_map(|b| b.fragments.iter_mut()) {
        next[f.parent] += 1;
        f.piece = next[f.parent];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BinClass, CostModel};
    use crate::verify::verify_packing;

    fn sizes(p: &Packing<u64>) -> Vec<Vec<u64>> {
        p.bins.iter().map(|b| b.fragments.iter().map(|f| f.size).collect()).collect()
    }

    fn linear(items: &[u64], caps: &[u64], d: u32) -> Instance<u64> {
        Instance::new(items.iter().copied(), caps.iter().map(|&c| BinClass::linear(c)), d, CostModel::Linear).unwrap()
    }

    #[test]
    fn ff_example() {
        let p = pack_ff(&UniformPackingRequest::new(vec![10u64, 6, 4, 10], 10)).unwrap();
        assert_eq!(sizes(&p), vec![vec![10], vec![6, 4], vec![10]]);
        let parents: Vec<usize> = p.bins[1].fragments.iter().map(|f| f.parent).collect();
        assert_eq!(parents, [2, 3]);
    }

    #[test]
    fn ff_empty() {
        assert!(pack_ff(&UniformPackingRequest::new(Vec::<u64>::new(), 10)).unwrap().is_empty());
    }

    #[test]
    fn ff_rejects_oversize() {
        let err = pack_ff(&UniformPackingRequest::new(vec![11u64], 10)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(pack_ffd(&UniformPackingRequest::new(vec![0u64], 10)).is_err());
    }

    #[test]
    fn ffd_examples() {
        let p = pack_ffd(&UniformPackingRequest::new(vec![4u64, 10, 6, 10], 10)).unwrap();
        assert_eq!(sizes(&p), vec![vec![10], vec![10], vec![6, 4]]);
        // stable: the first 10 is item 2
        assert_eq!(p.bins[0].fragments[0].parent, 2);
        assert_eq!(p.bins[1].fragments[0].parent, 4);
        let p = pack_ffd(&UniformPackingRequest::new(vec![7u64, 7, 7], 10)).unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn nfc_cuts_at_bin_boundaries() {
        let inst = linear(&[7, 7, 7], &[10, 6], 1);
        let p = pack_nfc(&inst).unwrap();
        assert_eq!(sizes(&p), vec![vec![7, 3], vec![4, 6], vec![1]]);
        assert!(p.bins.iter().all(|b| b.class_index == 0));
        assert!(verify_packing(&p, &inst).is_valid());
    }

    #[test]
    fn nfc_exact_fit_has_no_cuts() {
        let inst = linear(&[10, 10], &[10], 1);
        let p = pack_nfc(&inst).unwrap();
        assert_eq!(sizes(&p), vec![vec![10], vec![10]]);
    }

    #[test]
    fn nfc_requires_strong_hypothesis() {
        let inst = linear(&[11], &[10], 1);
        assert!(matches!(pack_nfc(&inst), Err(Error::Precondition(_))));
    }

    #[test]
    fn nfc_without_cuts_opens_new_bins() {
        let inst = linear(&[7, 7, 7], &[10], 0);
        let p = pack_nfc(&inst).unwrap();
        assert_eq!(sizes(&p), vec![vec![7], vec![7], vec![7]]);
        assert!(verify_packing(&p, &inst).is_valid());
    }

    #[test]
    fn near_equal_split_uses_fewest_pieces() {
        assert_eq!(near_equal_split(13u64, 2, 10), Some(vec![7, 6]));
        assert_eq!(near_equal_split(10u64, 4, 10), Some(vec![10]));
        assert_eq!(near_equal_split(25u64, 3, 10), Some(vec![9, 8, 8]));
        assert_eq!(near_equal_split(31u64, 3, 10), None);
    }

    #[test]
    fn cff_reproduces_three_by_thirteen() {
        let inst = linear(&[13, 13, 13], &[10, 4], 1);
        let p = pack_cff(&inst).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(sizes(&p), vec![vec![7], vec![6], vec![7], vec![6], vec![7], vec![6]]);
        for id in 1..=3 {
            let mut parts: Vec<u64> = p
                .bins
                .iter()
                .flat_map(|b| &b.fragments)
                .filter(|f| f.parent == id)
                .map(|f| f.size)
                .collect();
            parts.sort_unstable();
            assert_eq!(parts, [6, 7]);
        }
        assert_eq!(verify_packing(&p, &inst).cost(), Some(60));
    }

    #[test]
    fn cff_no_cut_when_item_fits() {
        let inst = linear(&[10], &[10], 3);
        let p = pack_cff(&inst).unwrap();
        assert_eq!(sizes(&p), vec![vec![10]]);
        assert_eq!(p.bins[0].fragments[0].piece, 1);
    }

    #[test]
    fn renumbering_is_per_parent() {
        let inst = linear(&[13, 13, 13], &[10], 1);
        let p = pack_cff(&inst).unwrap();
        let pieces: Vec<(usize, u32)> =
            p.bins.iter().flat_map(|b| &b.fragments).map(|f| (f.parent, f.piece)).collect();
        assert_eq!(pieces, [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)]);
    }
}
