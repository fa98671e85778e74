//! Finite carriers, transformations, the product semigroup `S_A × Fun(A, B)`,
//! free-semigroup words and finite semigroup tables.
//!
//! All actions are right actions: a state `a` acted on by `s` then `t` is
//! `a∘(st) = (a∘s)∘t`, so products apply the left factor first.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{check_index, check_size, Error, Result};
use crate::par::{self, Execution};

/// Default bound on the number of elements produced by a closure.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Above this many `order²` products the closure verifies against the raw
/// multiplication only through the generator columns plus Light's test.
const DIRECT_VERIFY_LIMIT: usize = 1 << 22;

/// A finite set `{0, .., size-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FiniteSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Empty("finite set".into()));
        }
        Ok(Self { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Empty("finite set".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of element `i`: its label if present, else the index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Inverse of [`label`](Self::label).
    pub fn parse_label(&self, text: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == text),
            None => text.parse::<usize>().ok().filter(|i| *i < self.size && i.to_string() == text),
        }
    }

    /// Product set with pairs `(i, j)` encoded as `i * other.size + j`.
    pub fn product(&self, other: &FiniteSet) -> FiniteSet {
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some(
                (0..self.size)
                    .flat_map(|i| {
                        (0..other.size).map(move |j| format!("({},{})", self.label(i), other.label(j)))
                    })
                    .collect(),
            ),
        };
        FiniteSet {
            size: self.size * other.size,
            labels,
        }
    }
}

/// A total self-map of `{0, .., n-1}`; an element of `S_A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Vec<usize>,
}

impl Transformation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::Empty("transformation".into()));
        }
        let n = image.len();
        for (i, &v) in image.iter().enumerate() {
            check_index(|| format!("transformation[{i}]"), v, n)?;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        Self {
            image: vec![value; n],
        }
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `self` first, then `other`: `result(i) = other(self(i))`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        check_size("transformation composition", self.domain_size(), other.domain_size())?;
        Ok(Transformation {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        })
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    /// All `n^n` transformations of an `n`-element set, in lexicographic order.
    pub fn all(n: usize) -> Vec<Transformation> {
        all_functions(n, n)
            .into_iter()
            .map(|image| Transformation { image })
            .collect()
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image)
    }
}

/// Every function `{0..domain} -> {0..codomain}` as an image vector, lexicographic.
pub fn all_functions(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; domain];
    loop {
        out.push(cur.clone());
        let mut k = domain;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < codomain {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// A map `A -> B` between finite sets; an element of `Fun(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunMap {
    image: Vec<usize>,
    codomain_size: usize,
}

impl FunMap {
    pub fn new(image: Vec<usize>, codomain_size: usize) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::Empty("function domain".into()));
        }
        if codomain_size == 0 {
            return Err(Error::Empty("function codomain".into()));
        }
        for (i, &v) in image.iter().enumerate() {
            check_index(|| format!("map[{i}]"), v, codomain_size)?;
        }
        Ok(Self {
            image,
            codomain_size,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Precompose with a transformation: `a ↦ self(sigma(a))`.
    pub fn after(&self, sigma: &Transformation) -> Result<FunMap> {
        check_size("map precomposition", sigma.domain_size(), self.domain_size())?;
        Ok(FunMap {
            image: sigma.image.iter().map(|&a| self.image[a]).collect(),
            codomain_size: self.codomain_size,
        })
    }
}

/// An element `(σ, φ)` of `S_{A,B} = S_A × Fun(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairElement {
    sigma: Transformation,
    phi: FunMap,
}

impl PairElement {
    pub fn new(sigma: Transformation, phi: FunMap) -> Result<Self> {
        check_size("pair element", sigma.domain_size(), phi.domain_size())?;
        Ok(Self { sigma, phi })
    }

    pub fn sigma(&self) -> &Transformation {
        &self.sigma
    }

    pub fn phi(&self) -> &FunMap {
        &self.phi
    }

    /// `(σ₁, φ₁)(σ₂, φ₂) = (σ₁σ₂, σ₁φ₂)` where `σ₁φ₂` is `a ↦ φ₂(σ₁(a))`.
    pub fn multiply(&self, other: &PairElement) -> Result<PairElement> {
        check_size(
            "pair codomain",
            self.phi.codomain_size,
            other.phi.codomain_size,
        )?;
        Ok(PairElement {
            sigma: self.sigma.compose(&other.sigma)?,
            phi: other.phi.after(&self.sigma)?,
        })
    }

    /// Every element of `S_{A,B}` for `|A| = states`, `|B| = outputs`.
    pub fn all(states: usize, outputs: usize) -> Vec<PairElement> {
        let phis = all_functions(states, outputs);
        Transformation::all(states)
            .into_iter()
            .flat_map(|sigma| {
                phis.iter().map(move |p| PairElement {
                    sigma: sigma.clone(),
                    phi: FunMap {
                        image: p.clone(),
                        codomain_size: outputs,
                    },
                })
            })
            .collect()
    }
}

/// A non-empty word over `{0, .., alphabet_size-1}`; an element of `F(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<usize>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, alphabet_size: usize) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty("word".into()));
        }
        for (i, &l) in letters.iter().enumerate() {
            check_index(|| format!("word letter {i}"), l, alphabet_size)?;
        }
        Ok(Self {
            letters,
            alphabet_size,
        })
    }

    pub fn letter(x: usize, alphabet_size: usize) -> Result<Self> {
        Self::new(vec![x], alphabet_size)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; words of the free semigroup are non-empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_size("word alphabets", self.alphabet_size, other.alphabet_size)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            letters,
            alphabet_size: self.alphabet_size,
        })
    }

    /// Splits into two non-empty words at `k` (`1 <= k < len`).
    pub fn split_at(&self, k: usize) -> Option<(Word, Word)> {
        if k == 0 || k >= self.len() {
            return None;
        }
        let (l, r) = self.letters.split_at(k);
        Some((
            Word {
                letters: l.to_vec(),
                alphabet_size: self.alphabet_size,
            },
            Word {
                letters: r.to_vec(),
                alphabet_size: self.alphabet_size,
            },
        ))
    }

    /// All words of length exactly `len`, lexicographic.
    pub fn all_of_length(alphabet_size: usize, len: usize) -> impl Iterator<Item = Word> {
        all_functions(len, alphabet_size)
            .into_iter()
            .map(move |letters| Word {
                letters,
                alphabet_size,
            })
    }

    /// All words of length `1..=max_len` in shortlex order.
    pub fn all_up_to(alphabet_size: usize, max_len: usize) -> impl Iterator<Item = Word> {
        (1..=max_len).flat_map(move |len| Self::all_of_length(alphabet_size, len))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A finite semigroup given by its full multiplication table.
///
/// Elements are `0..order`. `generators` lists, per generator letter, the
/// element it denotes (so repeats are allowed); when non-empty the table is
/// required to be generated by them. `names[i]`, when present, is a shortest
/// generator word evaluating to `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    order: usize,
    product: Vec<usize>,
    generators: Vec<usize>,
    names: Option<Vec<Vec<usize>>>,
}

impl SemigroupTable {
    /// Builds and fully validates a table: ranges, associativity, generation and names.
    pub fn new(
        product: Vec<Vec<usize>>,
        generators: Vec<usize>,
        names: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        Self::new_with(product, generators, names, Execution::default())
    }

    pub fn new_with(
        product: Vec<Vec<usize>>,
        generators: Vec<usize>,
        names: Option<Vec<Vec<usize>>>,
        exec: Execution,
    ) -> Result<Self> {
        let order = product.len();
        if order == 0 {
            return Err(Error::Empty("semigroup".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in product.iter().enumerate() {
            check_size(&format!("product row {i}"), row.len(), order)?;
            for (j, &v) in row.iter().enumerate() {
                check_index(|| format!("product[{i}][{j}]"), v, order)?;
                flat.push(v);
            }
        }
        for (k, &g) in generators.iter().enumerate() {
            check_index(|| format!("generators[{k}]"), g, order)?;
        }
        let table = SemigroupTable {
            order,
            product: flat,
            generators,
            names: None,
        };
        if !table.generators.is_empty() {
            let reached = table.generated_by(&table.generators);
            if let Some(missing) = reached.iter().position(|r| !r) {
                return Err(Error::NotGenerated { missing });
            }
        }
        if let Some((x, y, z)) = table.find_non_associative(exec) {
            return Err(Error::NotAssociative { x, y, z });
        }
        let table = match names {
            Some(names) => table.with_names(names)?,
            None => table,
        };
        Ok(table)
    }

    /// Table whose associativity is guaranteed by the caller's construction.
    pub(crate) fn from_trusted(order: usize, product: Vec<usize>, generators: Vec<usize>) -> Self {
        debug_assert_eq!(product.len(), order * order);
        SemigroupTable {
            order,
            product,
            generators,
            names: None,
        }
    }

    /// The one-element semigroup.
    pub fn trivial() -> Self {
        SemigroupTable {
            order: 1,
            product: vec![0],
            generators: vec![0],
            names: Some(vec![vec![0]]),
        }
    }

    fn with_names(mut self, names: Vec<Vec<usize>>) -> Result<Self> {
        check_size("names", names.len(), self.order)?;
        if self.generators.is_empty() {
            return Err(Error::Invalid("names require generators".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Empty(format!("names[{i}]")));
            }
            for (k, &g) in name.iter().enumerate() {
                check_index(|| format!("names[{i}][{k}]"), g, self.generators.len())?;
            }
            let v = self.eval(name);
            if v != i {
                return Err(Error::Invalid(format!(
                    "names[{i}] evaluates to element {v}, not {i}"
                )));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn names(&self) -> Option<&[Vec<usize>]> {
        self.names.as_deref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.order + y]
    }

    /// Row-major product table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Value of a non-empty generator word (letters index `generators`).
    pub fn eval(&self, word: &[usize]) -> usize {
        let mut it = word.iter().map(|&g| self.generators[g]);
        let first = it.next().expect("generator word must be non-empty");
        it.fold(first, |acc, g| self.mul(acc, g))
    }

    /// Product of a non-empty sequence of elements.
    pub fn product_of(&self, elements: &[usize]) -> usize {
        let (first, rest) = elements.split_first().expect("non-empty product");
        rest.iter().fold(*first, |acc, &g| self.mul(acc, g))
    }

    /// Membership vector of the subsemigroup generated by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        let mut queue: Vec<usize> = Vec::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                queue.push(g);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        seen
    }

    /// First `(x, y, z)` with `(xy)z != x(yz)`, or `None`.
    ///
    /// With generators present this is Light's test, which is exact for a
    /// generated table: associativity holds iff `(xg)y = x(gy)` for every
    /// generator `g`. Otherwise all triples are checked.
    pub fn find_non_associative(&self, exec: Execution) -> Option<(usize, usize, usize)> {
        let n = self.order;
        if self.generators.is_empty() {
            par::find_first(exec, n * n, |xy| {
                let (x, y) = (xy / n, xy % n);
                let p = self.mul(x, y);
                (0..n)
                    .find(|&z| self.mul(p, z) != self.mul(x, self.mul(y, z)))
                    .map(|z| (x, y, z))
            })
        } else {
            let mut gens = self.generators.clone();
            gens.sort_unstable();
            gens.dedup();
            let gens = &gens;
            par::find_first(exec, n, |x| {
                gens.iter().find_map(|&g| {
                    let xg = self.mul(x, g);
                    (0..n)
                        .find(|&y| self.mul(xg, y) != self.mul(x, self.mul(g, y)))
                        .map(|y| (x, g, y))
                })
            })
        }
    }

    /// Checks every triple regardless of generators.
    pub fn find_non_associative_exhaustive(&self, exec: Execution) -> Option<(usize, usize, usize)> {
        let mut copy = self.clone();
        copy.generators.clear();
        copy.find_non_associative(exec)
    }

    /// Whether `map: self -> target` preserves products; first failing pair otherwise.
    pub fn homomorphism_violation(&self, map: &[usize], target: &SemigroupTable) -> Option<(usize, usize)> {
        (0..self.order)
            .flat_map(|x| (0..self.order).map(move |y| (x, y)))
            .find(|&(x, y)| map[self.mul(x, y)] != target.mul(map[x], map[y]))
    }
}

/// Result of [`generate_semigroup`]: the table plus the concrete elements.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    pub table: SemigroupTable,
    pub elements: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Eq + Hash> Closure<T> {
    pub fn index_of(&self, element: &T) -> Option<usize> {
        self.index.get(element).copied()
    }
}

/// Breadth-first closure of `generators` under `multiply`.
///
/// Elements are numbered in discovery order, which is shortlex order of their
/// names: each name is the lexicographically least shortest generator word.
pub fn generate_semigroup<T, F>(generators: &[T], multiply: F, cap: usize) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash + Send + Sync,
    F: Fn(&T, &T) -> T + Sync + Send,
{
    generate_semigroup_with(generators, multiply, cap, Execution::default())
}

pub fn generate_semigroup_with<T, F>(
    generators: &[T],
    multiply: F,
    cap: usize,
    exec: Execution,
) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash + Send + Sync,
    F: Fn(&T, &T) -> T + Sync + Send,
{
    if generators.is_empty() {
        return Err(Error::Empty("generator list".into()));
    }
    let k = generators.len();
    let mut elements: Vec<T> = Vec::new();
    let mut names: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<T, usize> = HashMap::new();
    // parent[i] = (element, generator) with names[i] = names[element] ++ [generator]
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let mut gen_index = Vec::with_capacity(k);

    for (g, x) in generators.iter().enumerate() {
        let idx = match index.get(x) {
            Some(&i) => i,
            None => {
                let i = elements.len();
                if i >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                elements.push(x.clone());
                names.push(vec![g]);
                parent.push(None);
                index.insert(x.clone(), i);
                i
            }
        };
        gen_index.push(idx);
    }

    let mut cayley: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for g in 0..k {
            let y = multiply(&elements[head], &generators[g]);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let mut name = names[head].clone();
                    name.push(g);
                    names.push(name);
                    parent.push(Some((head, g)));
                    index.insert(y.clone(), i);
                    elements.push(y);
                    i
                }
            };
            cayley.push(idx);
        }
        head += 1;
    }

    let n = elements.len();
    // Row x of the table: x·j follows the name of j through the right Cayley graph.
    let rows: Vec<Vec<usize>> = par::map_range(exec, n, |x| {
        let mut row = vec![0usize; n];
        for j in 0..n {
            row[j] = match parent[j] {
                None => cayley[x * k + names[j][0]],
                Some((p, g)) => cayley[row[p] * k + g],
            };
        }
        row
    });
    let product: Vec<usize> = rows.into_iter().flatten().collect();
    let table = SemigroupTable {
        order: n,
        product,
        generators: gen_index,
        names: Some(names),
    };

    // The table is the right-bracketed evaluation of names; it agrees with
    // `multiply` on all pairs iff `multiply` is associative on the closure.
    let bad = if n.saturating_mul(n) <= DIRECT_VERIFY_LIMIT {
        par::find_first(exec, n * n, |xy| {
            let (x, y) = (xy / n, xy % n);
            let z = multiply(&elements[x], &elements[y]);
            (index.get(&z) != Some(&table.mul(x, y))).then_some((x, y, 0))
        })
    } else {
        let gens = &table.generators;
        par::find_first(exec, n, |y| {
            gens.iter().enumerate().find_map(|(g, &gi)| {
                let z = multiply(&generators[g], &elements[y]);
                (index.get(&z) != Some(&table.mul(gi, y))).then_some((gi, y, 0))
            })
        })
        .or_else(|| table.find_non_associative(exec))
    };
    if let Some((x, y, z)) = bad {
        return Err(Error::NotAssociative { x, y, z });
    }

    Ok(Closure {
        table,
        elements,
        index,
    })
}

/// Groups all words of length `1..=max_len` by their image under `eval`.
///
/// Classes are listed in order of their first word (shortlex), words within a
/// class in shortlex order.
pub fn kernel_classes<F>(alphabet_size: usize, max_len: usize, mut eval: F) -> Vec<Vec<Word>>
where
    F: FnMut(&Word) -> usize,
{
    let mut classes: Vec<Vec<Word>> = Vec::new();
    let mut by_image: HashMap<usize, usize> = HashMap::new();
    for w in Word::all_up_to(alphabet_size, max_len) {
        let img = eval(&w);
        match by_image.get(&img) {
            Some(&c) => classes[c].push(w),
            None => {
                by_image.insert(img, classes.len());
                classes.push(vec![w]);
            }
        }
    }
    classes
}

/// A total table `rows × cols -> {0..codomain}`, used for `∘` and `∗`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    rows: usize,
    cols: usize,
    codomain: usize,
    data: Vec<usize>,
}

impl Table {
    pub fn from_rows(name: &str, rows: Vec<Vec<usize>>, cols: usize, codomain: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            check_size(&format!("{name} row {r}"), row.len(), cols)?;
            for (c, v) in row.into_iter().enumerate() {
                check_index(|| format!("{name}[{r}][{c}]"), v, codomain)?;
                data.push(v);
            }
        }
        Ok(Table {
            rows: n,
            cols,
            codomain,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, codomain: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let data = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect::<Vec<_>>();
        debug_assert!(data.iter().all(|&v| v < codomain));
        Table {
            rows,
            cols,
            codomain,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: usize) -> Result<()> {
        check_index(|| format!("table[{r}][{c}]"), v, self.codomain)?;
        self.data[r * self.cols + c] = v;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub(crate) fn expect_shape(&self, name: &str, rows: usize, cols: usize, codomain: usize) -> Result<()> {
        check_size(&format!("{name} rows"), self.rows, rows)?;
        check_size(&format!("{name} columns"), self.cols, cols)?;
        check_size(&format!("{name} codomain"), self.codomain, codomain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    fn pair(s: &[usize], p: &[usize], b: usize) -> PairElement {
        PairElement::new(t(s), FunMap::new(p.to_vec(), b).unwrap()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Transformation::identity(2).compose(&t(&[1, 0])).unwrap(), t(&[1, 0]));
        assert_eq!(t(&[1, 0]).compose(&t(&[1, 0])).unwrap(), Transformation::identity(2));
        assert_eq!(t(&[1, 2, 0]).compose(&t(&[1, 2, 0])).unwrap(), t(&[2, 0, 1]));
    }

    #[test]
    fn compose_is_left_first() {
        // a=0: [1,1,2] sends 0->1, then [0,2,2] sends 1->2.
        let r = t(&[1, 1, 2]).compose(&t(&[0, 2, 2])).unwrap();
        assert_eq!(r.apply(0), 2);
    }

    #[test]
    fn compose_size_mismatch() {
        assert!(matches!(
            t(&[0, 1]).compose(&t(&[0, 1, 2])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn transformation_rejects_out_of_range() {
        let err = Transformation::new(vec![0, 2]).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRange {
                what: "transformation[1]".into(),
                index: 2,
                size: 2
            }
        );
    }

    #[test]
    fn multiply_pair_examples() {
        let id = Transformation::identity(2);
        let phi = FunMap::new(vec![1, 1], 2).unwrap();
        let psi = FunMap::new(vec![0, 1], 2).unwrap();
        let p = PairElement::new(id.clone(), phi).unwrap();
        let q = PairElement::new(id.clone(), psi.clone()).unwrap();
        assert_eq!(p.multiply(&q).unwrap(), PairElement::new(id, psi).unwrap());

        let s = pair(&[1, 0], &[0, 1], 2);
        assert_eq!(s.multiply(&s).unwrap(), pair(&[0, 1], &[1, 0], 2));
    }

    #[test]
    fn multiply_pair_size_mismatch() {
        let a = pair(&[0, 1], &[0, 1], 2);
        let b = pair(&[0, 1], &[0, 2], 3);
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn closure_examples() {
        let swap = generate_semigroup(&[t(&[1, 0])], |a, b| a.compose(b).unwrap(), 100).unwrap();
        assert_eq!(swap.table.order(), 2);
        assert_eq!(swap.elements, vec![t(&[1, 0]), t(&[0, 1])]);
        assert_eq!(swap.table.names().unwrap(), &[vec![0], vec![0, 0]]);

        let c = generate_semigroup(&[t(&[0, 0])], |a, b| a.compose(b).unwrap(), 100).unwrap();
        assert_eq!(c.table.order(), 1);

        let cyc = generate_semigroup(&[t(&[1, 2, 0])], |a, b| a.compose(b).unwrap(), 100).unwrap();
        assert_eq!(cyc.table.order(), 3);
        // cyclic group: the generator has order 3
        let g = cyc.table.generators()[0];
        assert_eq!(cyc.table.product_of(&[g, g, g, g]), g);
    }

    #[test]
    fn closure_cap_exceeded() {
        let gens = [t(&[1, 2, 3, 0]), t(&[1, 0, 2, 3])];
        let err = generate_semigroup(&gens, |a, b| a.compose(b).unwrap(), 10).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 10 });
        let full = generate_semigroup(&gens, |a, b| a.compose(b).unwrap(), 24).unwrap();
        assert_eq!(full.table.order(), 24);
    }

    #[test]
    fn closure_detects_non_associative_multiply() {
        // x*y = (x - y) mod 3 on Z3 is not associative.
        let err = generate_semigroup(&[1usize], |a, b| (a + 3 - b) % 3, 10).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }));
    }

    #[test]
    fn names_are_shortlex_least() {
        // Two generators where the element [0,0,0] is reachable as both `ab` and `ba`.
        let a = t(&[0, 0, 2]);
        let b = t(&[0, 0, 0]);
        let cl = generate_semigroup(&[a, b], |x, y| x.compose(y).unwrap(), 100).unwrap();
        for (i, name) in cl.table.names().unwrap().iter().enumerate() {
            assert_eq!(cl.table.eval(name), i);
            let first = Word::all_up_to(2, name.len())
                .find(|w| cl.table.eval(w.letters()) == i)
                .unwrap();
            assert_eq!(first.letters(), name.as_slice());
        }
    }

    #[test]
    fn kernel_class_examples() {
        let swap = generate_semigroup(&[t(&[1, 0])], |a, b| a.compose(b).unwrap(), 10).unwrap();
        let classes = kernel_classes(1, 3, |w| swap.table.eval(w.letters()));
        let lens: Vec<Vec<usize>> = classes.iter().map(|c| c.iter().map(Word::len).collect()).collect();
        assert_eq!(lens, vec![vec![1, 3], vec![2]]);

        let classes = kernel_classes(1, 3, |_| 0);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 3);

        // Words evaluated faithfully (as themselves) are all distinct.
        let mut seen = HashMap::new();
        let classes = kernel_classes(2, 3, |w| {
            let n = seen.len();
            *seen.entry(w.clone()).or_insert(n)
        });
        assert_eq!(classes.len(), 2 + 4 + 8);
    }

    #[test]
    fn table_rejects_bad_tables() {
        assert!(matches!(
            SemigroupTable::new(vec![vec![0, 2], vec![1, 0]], vec![], None),
            Err(Error::OutOfRange { .. })
        ));
        // x*y = 1 - x is not associative: (0*0)*0 = 0 but 0*(0*0) = 1
        assert!(matches!(
            SemigroupTable::new(vec![vec![1, 1], vec![0, 0]], vec![], None),
            Err(Error::NotAssociative { .. })
        ));
        // left zero semigroup is not generated by {0}
        assert_eq!(
            SemigroupTable::new(vec![vec![0, 0], vec![1, 1]], vec![0], None),
            Err(Error::NotGenerated { missing: 1 })
        );
    }

    #[test]
    fn light_test_matches_exhaustive_on_all_order_two_magmas() {
        for code in 0..16usize {
            let rows = [vec![code & 1, (code >> 1) & 1], vec![(code >> 2) & 1, (code >> 3) & 1]];
            let plain = SemigroupTable::from_trusted(2, rows.concat(), vec![]);
            let exhaustive = plain.find_non_associative(Execution::Sequential).is_none();
            for g in 0..2 {
                let gen = SemigroupTable::from_trusted(2, rows.concat(), vec![g]);
                if gen.generated_by(&[g]).iter().all(|&b| b) {
                    assert_eq!(gen.find_non_associative(Execution::Sequential).is_none(), exhaustive);
                }
            }
        }
    }

    #[test]
    fn words_enumerate_in_shortlex() {
        let ws: Vec<String> = Word::all_up_to(2, 2).map(|w| w.to_string()).collect();
        assert_eq!(ws, ["0", "1", "0 0", "0 1", "1 0", "1 1"]);
        assert_eq!(Word::new(vec![], 2), Err(Error::Empty("word".into())));
        let w = Word::new(vec![0, 1, 1], 2).unwrap();
        let (a, b) = w.split_at(1).unwrap();
        assert_eq!(a.concat(&b).unwrap(), w);
        assert!(w.split_at(3).is_none());
    }

    #[test]
    fn finite_set_labels() {
        assert!(FiniteSet::new(0).is_err());
        assert!(FiniteSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        let s = FiniteSet::with_labels(vec!["p".into(), "q".into()]).unwrap();
        assert_eq!(s.parse_label("q"), Some(1));
        assert_eq!(s.label(0), "p");
        let n = FiniteSet::new(3).unwrap();
        assert_eq!(n.parse_label("2"), Some(2));
        assert_eq!(n.parse_label("3"), None);
        assert_eq!(n.parse_label("01"), None);
        assert_eq!(n.parse_label("+1"), None);
    }
}
