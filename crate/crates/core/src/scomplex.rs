//! Finite simplicial complexes and the affine-tuple model of singular simplices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A finite abstract simplicial complex on the dense vertex set `0..vertex_count`.
///
/// Faces are stored as sorted vertex sets and are closed under taking
/// non-empty subsets. Bases of the affine model are computed on demand and
/// cached; the cache never changes observable values.
pub struct SimplicialComplex {
    name: String,
    vertex_count: usize,
    facets: Vec<Vec<Vertex>>,
    faces: BTreeSet<Vec<Vertex>>,
    bases: Mutex<HashMap<usize, Arc<Basis>>>,
}

/// The canonical basis of the affine model in one dimension, with an inverse
/// lookup table.
#[derive(Debug)]
pub struct Basis {
    pub dim: usize,
    pub simplices: Vec<AffineSimplex>,
    index: HashMap<AffineSimplex, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, simplex: &AffineSimplex) -> Option<usize> {
        self.index.get(simplex).copied()
    }
}

/// On-disk form of a complex: `{ "vertices": 3, "facets": [[0,1],[1,2]], "name": "..." }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub facets: Vec<Vec<u64>>,
    #[serde(default)]
    pub name: String,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets` on `vertex_count` vertices.
    /// Every vertex is a face, whether or not it occurs in a facet.
    pub fn from_facets(
        name: impl Into<String>,
        vertex_count: usize,
        facets: &[Vec<u64>],
    ) -> Result<Self> {
        let mut faces = BTreeSet::new();
        let mut maximal = BTreeSet::new();
        for (pos, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::EmptyFacet(pos));
            }
            if let Some(&vertex) = facet.iter().find(|&&v| v >= vertex_count as u64) {
                return Err(Error::VertexOutOfRange {
                    facet: facet.clone(),
                    vertex,
                    count: vertex_count,
                });
            }
            let mut set: Vec<Vertex> = facet.iter().map(|&v| v as Vertex).collect();
            set.sort_unstable();
            set.dedup();
            if set.len() > 24 {
                return Err(Error::MalformedComplex(format!(
                    "facet {pos} has {} vertices",
                    set.len()
                )));
            }
            insert_subsets(&set, &mut faces);
            maximal.insert(set);
        }
        for v in 0..vertex_count {
            faces.insert(vec![v as Vertex]);
        }
        let facets = maximal
            .iter()
            .filter(|f| !maximal.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        Ok(Self {
            name: name.into(),
            vertex_count,
            facets,
            faces,
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        Self::from_facets(doc.name.clone(), doc.vertices, &doc.facets)
    }

    /// Parses the JSON complex document.
    pub fn load(text: &str) -> Result<Self> {
        let doc: ComplexDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedComplex(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.vertex_count,
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|&v| v as u64).collect())
                .collect(),
            name: self.name.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    /// All faces as sorted vertex sets, ordered lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = &[Vertex]> {
        self.faces.iter().map(Vec::as_slice)
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces with `k + 1` vertices.
    pub fn faces_of_dim(&self, k: usize) -> Vec<&[Vertex]> {
        self.faces().filter(|f| f.len() == k + 1).collect()
    }

    pub fn dimension(&self) -> usize {
        self.faces.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Whether the vertex set of `vertices` (in any order, repeats allowed)
    /// is a face.
    pub fn is_face(&self, vertices: &[Vertex]) -> bool {
        if vertices.is_empty() {
            return false;
        }
        let mut set = vertices.to_vec();
        set.sort_unstable();
        set.dedup();
        self.faces.contains(&set)
    }

    pub fn contains(&self, simplex: &AffineSimplex) -> bool {
        self.is_face(simplex.vertices())
    }

    pub fn check(&self, simplex: &AffineSimplex) -> Result<()> {
        if self.contains(simplex) {
            Ok(())
        } else {
            Err(Error::NotInComplex(simplex.vertices().to_vec()))
        }
    }

    /// The affine-model basis in dimension `n`: every `(n+1)`-tuple of
    /// vertices whose support is a face, in lexicographic order.
    pub fn basis(&self, n: usize) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return Arc::clone(b);
        }
        let simplices = self.enumerate_tuples(n + 1);
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let basis = Arc::new(Basis {
            dim: n,
            simplices,
            index,
        });
        self.bases
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::clone(&basis));
        basis
    }

    fn enumerate_tuples(&self, len: usize) -> Vec<AffineSimplex> {
        let mut out = Vec::new();
        let mut tuple = Vec::with_capacity(len);
        self.extend_tuples(len, &mut tuple, &mut out);
        out
    }

    // Depth-first in lexicographic order. Supports of prefixes are faces
    // whenever the full support is, so pruning on prefixes loses nothing.
    fn extend_tuples(&self, len: usize, tuple: &mut Vec<Vertex>, out: &mut Vec<AffineSimplex>) {
        if tuple.len() == len {
            out.push(AffineSimplex(tuple.clone()));
            return;
        }
        for v in 0..self.vertex_count as Vertex {
            tuple.push(v);
            if self.is_face(tuple) {
                self.extend_tuples(len, tuple, out);
            }
            tuple.pop();
        }
    }
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            vertex_count: self.vertex_count,
            facets: self.facets.clone(),
            faces: self.faces.clone(),
            bases: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("vertex_count", &self.vertex_count)
            .field("facets", &self.facets)
            .finish()
    }
}

fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn insert_subsets(set: &[Vertex], faces: &mut BTreeSet<Vec<Vertex>>) {
    if faces.contains(set) {
        return;
    }
    let k = set.len();
    for mask in 1u32..(1u32 << k) {
        let subset: Vec<Vertex> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| set[i])
            .collect();
        faces.insert(subset);
    }
}

/// An ordered vertex tuple `(v_0, ..., v_n)` standing for a singular
/// `n`-simplex. Repeats are allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffineSimplex(Vec<Vertex>);

impl AffineSimplex {
    pub fn new(vertices: impl Into<Vec<Vertex>>) -> Self {
        let vertices = vertices.into();
        assert!(!vertices.is_empty(), "an affine simplex needs a vertex");
        Self(vertices)
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Sorted, duplicate-free vertex set.
    pub fn support(&self) -> Vec<Vertex> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn is_degenerate(&self) -> bool {
        self.support().len() < self.0.len()
    }

    /// The `j`-th face: the tuple with entry `j` deleted.
    pub fn face(&self, j: usize) -> Result<AffineSimplex> {
        let dim = self.dim();
        if dim == 0 {
            return Err(Error::ZeroDimensionalFace);
        }
        if j > dim {
            return Err(Error::FaceIndexOutOfRange { index: j, dim });
        }
        let mut v = self.0.clone();
        v.remove(j);
        Ok(AffineSimplex(v))
    }

    /// Precomposition with the affine map of `perm`:
    /// `(v_{perm(0)}, ..., v_{perm(n)})`.
    pub fn permute(&self, perm: &Permutation) -> Result<AffineSimplex> {
        if perm.len() != self.0.len() {
            return Err(Error::PermutationSizeMismatch {
                perm: perm.len(),
                tuple: self.0.len(),
            });
        }
        Ok(AffineSimplex(
            perm.images().iter().map(|&i| self.0[i]).collect(),
        ))
    }

    /// Pushforward of a model tuple along this simplex viewed as a vertex map
    /// `i -> v_i`.
    pub fn push(&self, model: &[usize]) -> AffineSimplex {
        AffineSimplex(model.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Debug for AffineSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AffineSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<Vertex>> for AffineSimplex {
    fn from(v: Vec<Vertex>) -> Self {
        Self::new(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for AffineSimplex {
    fn from(v: [Vertex; N]) -> Self {
        Self::new(v.to_vec())
    }
}

/// A permutation of `{0, ..., n}` together with its sign.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        let sign = parity_sign(&images);
        Ok(Self { images, sign })
    }

    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
            sign: 1,
        }
    }

    /// A transposition of `a` and `b` on `len` points.
    pub fn transposition(len: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        if a >= len || b >= len {
            return Err(Error::InvalidPermutation(vec![a, b]));
        }
        images.swap(a, b);
        Self::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ inner`, i.e. `i -> self(inner(i))`.
    pub fn compose(&self, inner: &Permutation) -> Result<Self> {
        if self.len() != inner.len() {
            return Err(Error::PermutationSizeMismatch {
                perm: self.len(),
                tuple: inner.len(),
            });
        }
        Ok(Self {
            images: inner.images.iter().map(|&i| self.images[i]).collect(),
            sign: self.sign * inner.sign,
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Self {
            images,
            sign: self.sign,
        }
    }
}

/// Sign via cycle decomposition: a cycle of length `l` contributes `(-1)^(l-1)`.
fn parity_sign(images: &[usize]) -> i8 {
    let mut seen = vec![false; images.len()];
    let mut sign = 1;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
