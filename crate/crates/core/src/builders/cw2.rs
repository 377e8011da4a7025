use crate::chain::{Cell, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::{fox_derivative, fox_derivative_mapped, FpGroup, GroupRingElement, GroupRingMatrix, Word};

/// Label carried by boundary cells of surfaces.
pub const BOUNDARY: &str = "boundary";

/// An oriented edge with the group element read along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub value: Word,
}

/// Incremental description of a 2-dimensional CW complex whose universal
/// cover is encoded by group words on edges.
///
/// Faces are closed edge paths: letter `k` walks edge `k - 1` forwards and
/// `-k` backwards. The lift of a face starts at the lift of its first vertex.
#[derive(Debug, Clone)]
pub struct Cw2 {
    group: FpGroup,
    vertices: usize,
    edges: Vec<Edge>,
    faces: Vec<Word>,
    labels: Vec<(Cell, String)>,
}

impl Cw2 {
    pub fn new(group: FpGroup, vertices: usize) -> Self {
        Cw2 {
            group,
            vertices,
            edges: Vec::new(),
            faces: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn edge(&mut self, tail: usize, head: usize, value: Word) -> usize {
        self.edges.push(Edge { tail, head, value });
        self.edges.len() - 1
    }

    /// Adds a loop at vertex 0 whose value is generator `g`.
    pub fn loop_edge(&mut self, g: usize) -> usize {
        self.edge(0, 0, Word::generator(g))
    }

    pub fn face(&mut self, path: Word) -> usize {
        self.faces.push(path);
        self.faces.len() - 1
    }

    pub fn label(&mut self, cell: Cell, name: &str) {
        self.labels.push((cell, name.to_string()));
    }

    fn check_path(&self, f: usize, path: &Word) -> Result<()> {
        path.check(self.edges.len())?;
        let ends = |l: i32| {
            let e = &self.edges[l.unsigned_abs() as usize - 1];
            if l > 0 {
                (e.tail, e.head)
            } else {
                (e.head, e.tail)
            }
        };
        let letters = path.letters();
        for (i, &l) in letters.iter().enumerate() {
            let next = letters[(i + 1) % letters.len()];
            if ends(l).1 != ends(next).0 {
                return Err(Error::Builder(format!("face {f} is not a closed edge path")));
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<EquivariantComplex> {
        let (nv, ne, nf) = (self.vertices, self.edges.len(), self.faces.len());
        let mut d1 = GroupRingMatrix::zeros(nv, ne);
        for (j, e) in self.edges.iter().enumerate() {
            if e.tail >= nv || e.head >= nv {
                return Err(Error::Builder(format!("edge {j} has an endpoint outside 0..{nv}")));
            }
            e.value.check(self.group.generator_count())?;
            d1.add_to(e.head, j, &GroupRingElement::word(e.value.reduced()));
            d1.add_to(e.tail, j, &GroupRingElement::integer(-1));
        }
        let values: Vec<Word> = self.edges.iter().map(|e| e.value.clone()).collect();
        let mut d2 = GroupRingMatrix::zeros(ne, nf);
        for (f, path) in self.faces.iter().enumerate() {
            self.check_path(f, path)?;
            for k in 0..ne {
                d2.set(k, f, fox_derivative_mapped(path, k + 1, Some(&values)));
            }
        }
        let mut x = EquivariantComplex::new(self.group, vec![nv, ne, nf], vec![d1, d2])?;
        for (c, name) in self.labels {
            if c.degree > 2 || c.index >= x.cell_count(c.degree) {
                return Err(Error::Builder(format!("label on missing cell {}:{}", c.degree, c.index)));
            }
            x.set_label(c, Some(name));
        }
        Ok(x)
    }
}

/// Presentation complex: one vertex, one loop per generator, one face per
/// relator. Without relators it is the 1-dimensional wedge of circles.
pub fn fox_complex(group: &FpGroup) -> Result<EquivariantComplex> {
    let n = group.generator_count();
    let mut d1 = GroupRingMatrix::zeros(1, n);
    for j in 0..n {
        d1.set(0, j, GroupRingElement::word_minus_one(Word::generator(j + 1)));
    }
    let rels = group.relators();
    let mut d2 = GroupRingMatrix::zeros(n, rels.len());
    for (f, r) in rels.iter().enumerate() {
        if r.is_empty() {
            return Err(Error::EmptyRelator(f));
        }
        for j in 0..n {
            d2.set(j, f, fox_derivative(r, j + 1));
        }
    }
    if rels.is_empty() {
        return EquivariantComplex::new(group.clone(), vec![1, n], vec![d1]);
    }
    EquivariantComplex::new(group.clone(), vec![1, n, rels.len()], vec![d1, d2])
}

/// Orientable surface of genus `g` with `b` boundary circles.
///
/// Closed surfaces use the one-vertex model with relator `Π [a_j, b_j]`.
/// With boundary, circle 1 is a loop at the base vertex and circle `i >= 2`
/// is a loop at its own vertex joined to the base by an arc; the single face
/// reads `Π [a_j, b_j] · c_1 · Π s_i c_i s_i^-1`. Cells on the boundary
/// circles carry the label [`BOUNDARY`]. Generators are `a_1, b_1, ..., c_1, ...`.
pub fn surface(genus: usize, boundary: usize) -> Result<EquivariantComplex> {
    if genus == 0 && boundary == 0 {
        return Err(Error::Builder("the sphere is excluded".into()));
    }
    let gens = 2 * genus + boundary;
    let mut rel = Vec::new();
    for j in 0..genus {
        let (a, b) = (2 * j as i32 + 1, 2 * j as i32 + 2);
        rel.extend([a, b, -a, -b]);
    }
    rel.extend((0..boundary).map(|i| (2 * genus + i) as i32 + 1));
    let group = FpGroup::new(gens, vec![Word::new(rel)])?;

    let vertices = boundary.max(1);
    let mut cw = Cw2::new(group, vertices);
    let mut path = Vec::new();
    for j in 0..genus {
        let a = cw.loop_edge(2 * j + 1) as i32 + 1;
        let b = cw.loop_edge(2 * j + 2) as i32 + 1;
        path.extend([a, b, -a, -b]);
    }
    if boundary > 0 {
        let c1 = cw.loop_edge(2 * genus + 1);
        cw.label(Cell::new(0, 0), BOUNDARY);
        cw.label(Cell::new(1, c1), BOUNDARY);
        path.push(c1 as i32 + 1);
        for i in 1..boundary {
            let s = cw.edge(0, i, Word::identity()) as i32 + 1;
            let c = cw.edge(i, i, Word::generator(2 * genus + i + 1));
            cw.label(Cell::new(0, i), BOUNDARY);
            cw.label(Cell::new(1, c), BOUNDARY);
            path.extend([s, c as i32 + 1, -s]);
        }
    }
    cw.face(Word::new(path));
    cw.build()
}

/// Disjoint union; the group is the free product of the two presentations,
/// with the generators of `y` shifted after those of `x`.
pub fn disjoint_union(x: &EquivariantComplex, y: &EquivariantComplex) -> Result<EquivariantComplex> {
    let gx = x.group().generator_count();
    let gy = y.group().generator_count();
    let shift: Vec<i32> = (0..gy).map(|g| (gx + g) as i32 + 1).collect();
    let mut relators = x.group().relators().to_vec();
    relators.extend(y.group().relators().iter().map(|r| r.rename(&shift)));
    let group = FpGroup::new(gx + gy, relators)?;
    let top = x.top_degree().max(y.top_degree());
    let counts: Vec<usize> = (0..=top).map(|d| x.cell_count(d) + y.cell_count(d)).collect();
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let mut m = GroupRingMatrix::zeros(counts[d - 1], counts[d]);
        if d <= x.top_degree() {
            for (i, j, e) in x.boundary(d).nonzero() {
                m.set(i, j, e.clone());
            }
        }
        if d <= y.top_degree() {
            let (r0, c0) = (x.cell_count(d - 1), x.cell_count(d));
            for (i, j, e) in y.boundary(d).nonzero() {
                m.set(r0 + i, c0 + j, e.map_words(|w| w.rename(&shift)));
            }
        }
        boundaries.push(m);
    }
    let labels = (0..=top)
        .map(|d| {
            let mut row: Vec<Option<String>> = x.labels().get(d).cloned().unwrap_or_default();
            row.extend(y.labels().get(d).cloned().unwrap_or_default());
            row
        })
        .collect();
    EquivariantComplex::with_labels(group, counts, boundaries, labels)
}

/// Sphere as two discs on a single loop at one vertex.
pub fn sphere() -> Result<EquivariantComplex> {
    let mut cw = Cw2::new(FpGroup::free(0), 1);
    cw.edge(0, 0, Word::identity());
    cw.face(Word::new(vec![1]));
    cw.face(Word::new(vec![1]));
    cw.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{betti, euler_char, twisted_betti, validate_complex};
    use crate::group_ring::{Cocycle, Specialization};

    fn aug(x: &EquivariantComplex) -> Vec<usize> {
        betti(x, &Specialization::Augmentation).unwrap().unnormalized
    }

    #[test]
    fn surface_examples() {
        let t = surface(1, 0).unwrap();
        assert_eq!(euler_char(&t), 0);
        assert_eq!(aug(&t), vec![1, 2, 1]);
        let s2 = surface(2, 0).unwrap();
        assert_eq!(euler_char(&s2), -2);
        assert_eq!(aug(&s2), vec![1, 4, 1]);
        let disk = surface(0, 1).unwrap();
        assert_eq!(aug(&disk), vec![1, 0, 0]);
        assert!(surface(0, 0).is_err());
    }

    #[test]
    fn bounded_surfaces_have_the_right_homology() {
        for (g, b) in [(1, 1), (0, 2), (1, 2), (2, 3), (0, 3)] {
            let x = surface(g, b).unwrap();
            assert_eq!(euler_char(&x), 2 - 2 * g as i64 - b as i64);
            assert_eq!(aug(&x), vec![1, 2 * g + b - 1, 0], "g={g} b={b}");
            let bdry = x.cells_labeled(&[BOUNDARY]);
            assert_eq!(bdry.len(), 2 * b);
            assert!(x.subcomplex_violation(&bdry).is_none());
        }
    }

    #[test]
    fn surfaces_validate_under_twists() {
        let x = surface(1, 2).unwrap();
        for phi in x.group().cocycle_basis() {
            assert!(validate_complex(&x, &Specialization::Twist(phi)).unwrap().valid);
        }
    }

    #[test]
    fn fox_complex_examples() {
        let wedge = fox_complex(&FpGroup::free(2)).unwrap();
        assert_eq!(aug(&wedge), vec![1, 2]);
        let torus = FpGroup::new(2, vec![Word::new(vec![1, 2, -1, -2])]).unwrap();
        assert_eq!(aug(&fox_complex(&torus).unwrap()), aug(&surface(1, 0).unwrap()));
        let trefoil = FpGroup::new(2, vec![Word::new(vec![1, 2, 1, -2, -1, -2])]).unwrap();
        let x = fox_complex(&trefoil).unwrap();
        assert_eq!(twisted_betti(&x, &Cocycle::new(vec![1, 1])).unwrap().unnormalized, vec![0, 0, 0]);
    }

    #[test]
    fn edge_path_must_close() {
        let mut cw = Cw2::new(FpGroup::free(0), 2);
        cw.edge(0, 1, Word::identity());
        cw.face(Word::new(vec![1]));
        assert!(matches!(cw.build(), Err(Error::Builder(_))));
    }

    #[test]
    fn union_adds_betti_numbers() {
        let u = disjoint_union(&sphere().unwrap(), &surface(3, 0).unwrap()).unwrap();
        assert_eq!(aug(&u), vec![2, 6, 2]);
        assert_eq!(euler_char(&u), 2 - 4);
    }
}
