//! On-disk JSON formats. Everything is 0-indexed, row-major, UTF-8.
//!
//! - solution: `{"n": int, "sigma": [[int]], "rho": [[int]]}` with
//!   `sigma[a][b] = a -> b` and `rho[b][a] = a <- b` (acting element first).
//! - map: `{"k": [int]}`
//! - shelf: `{"n": int, "tri": [[int]]}`
//! - group: `{"n": int, "mul": [[int]], "identity": 0}`
//! - skew brace: `{"n": int, "add": [[int]], "mul": [[int]]}`
//! - fixing family: `{"maps": [[int]]}`
//! - twist: `{"F": [[[int]]], "Phi": [int], "Psi": [int]}` where `F[a][b]`
//!   is the image pair and `Phi`/`Psi` are flat tables over the row-major
//!   triple index `a*n^2 + b*n + c`, entries encoding image triples the same
//!   way.

use serde::{Deserialize, Serialize};

use reflectwist_core::{
    brace::SkewBrace,
    group::FiniteGroup,
    map::{CubeMap, FiniteMap, SquareMap},
    solution::{BraidedSet, Shelf},
    twist::TwistDatum,
    Error as CoreError,
};

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Core(CoreError),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "io: {e}"),
            LoadError::Json(e) => write!(f, "json: {e}"),
            LoadError::Core(e) => write!(f, "malformed object: {e}"),
        }
    }
}

impl From<std::io::Error> for LoadError {
    fn from(e: std::io::Error) -> Self {
        LoadError::Io(e)
    }
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        LoadError::Json(e)
    }
}

impl From<CoreError> for LoadError {
    fn from(e: CoreError) -> Self {
        LoadError::Core(e)
    }
}

#[derive(Serialize, Deserialize)]
pub struct SolutionFile {
    pub n: usize,
    pub sigma: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct MapFile {
    pub k: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct ShelfFile {
    pub n: usize,
    pub tri: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Serialize, Deserialize)]
pub struct SkewBraceFile {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
pub struct FixingFamilyFile {
    pub maps: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct TwistFile {
    pub F: Vec<Vec<[usize; 2]>>,
    pub Phi: Vec<usize>,
    pub Psi: Vec<usize>,
}

fn nested(table: &[usize], n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| table[a * n..(a + 1) * n].to_vec()).collect()
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, LoadError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_solution(path: &str) -> Result<BraidedSet, LoadError> {
    let file: SolutionFile = read_json(path)?;
    // shape is validated against the declared n; the Yang-Baxter check is up
    // to the caller, so malformed files and non-solutions error differently
    if file.sigma.len() != file.n || file.rho.len() != file.n {
        return Err(CoreError::Shape { expected: file.n, found: file.sigma.len() }.into());
    }
    let mut sigma = Vec::with_capacity(file.n * file.n);
    let mut rho = Vec::with_capacity(file.n * file.n);
    for row in &file.sigma {
        if row.len() != file.n {
            return Err(CoreError::Shape { expected: file.n, found: row.len() }.into());
        }
        sigma.extend_from_slice(row);
    }
    for row in &file.rho {
        if row.len() != file.n {
            return Err(CoreError::Shape { expected: file.n, found: row.len() }.into());
        }
        rho.extend_from_slice(row);
    }
    Ok(BraidedSet::without_ybe_check(file.n, sigma, rho)?)
}

pub fn solution_to_file(bs: &BraidedSet) -> SolutionFile {
    SolutionFile {
        n: bs.n(),
        sigma: nested(bs.sigma_table(), bs.n()),
        rho: nested(bs.rho_table(), bs.n()),
    }
}

pub fn load_map(path: &str, n: usize) -> Result<FiniteMap, LoadError> {
    let file: MapFile = read_json(path)?;
    if file.k.len() != n {
        return Err(CoreError::Shape { expected: n, found: file.k.len() }.into());
    }
    Ok(FiniteMap::new(file.k)?)
}

pub fn load_shelf(path: &str) -> Result<Shelf, LoadError> {
    let file: ShelfFile = read_json(path)?;
    let mut tri = Vec::with_capacity(file.n * file.n);
    for row in &file.tri {
        if row.len() != file.n {
            return Err(CoreError::Shape { expected: file.n, found: row.len() }.into());
        }
        tri.extend_from_slice(row);
    }
    Ok(Shelf::new(file.n, tri)?)
}

pub fn load_group(path: &str) -> Result<FiniteGroup, LoadError> {
    let file: GroupFile = read_json(path)?;
    let g = FiniteGroup::from_nested(&file.mul)?;
    if g.identity() != file.identity {
        return Err(CoreError::NoIdentity.into());
    }
    Ok(g)
}

pub fn group_to_file(g: &FiniteGroup) -> GroupFile {
    GroupFile { n: g.n(), mul: nested(g.table(), g.n()), identity: g.identity() }
}

pub fn load_skew_brace(path: &str) -> Result<SkewBrace, LoadError> {
    let file: SkewBraceFile = read_json(path)?;
    let add = FiniteGroup::from_nested(&file.add)?;
    let mul = FiniteGroup::from_nested(&file.mul)?;
    Ok(SkewBrace::new(add, mul)?)
}

pub fn skew_brace_to_file(sb: &SkewBrace) -> SkewBraceFile {
    SkewBraceFile {
        n: sb.n(),
        add: nested(sb.add.table(), sb.n()),
        mul: nested(sb.mul.table(), sb.n()),
    }
}

pub fn load_fixing_family(path: &str, n: usize) -> Result<Vec<FiniteMap>, LoadError> {
    let file: FixingFamilyFile = read_json(path)?;
    if file.maps.len() != n {
        return Err(CoreError::Shape { expected: n, found: file.maps.len() }.into());
    }
    file.maps
        .into_iter()
        .map(|img| FiniteMap::new(img).map_err(Into::into))
        .collect()
}

pub fn load_twist(path: &str) -> Result<(SquareMap, CubeMap, CubeMap), LoadError> {
    let file: TwistFile = read_json(path)?;
    let n = file.F.len();
    let mut f = Vec::with_capacity(n * n);
    for row in &file.F {
        if row.len() != n {
            return Err(CoreError::Shape { expected: n, found: row.len() }.into());
        }
        for &[c, d] in row {
            if c >= n || d >= n {
                return Err(CoreError::Range { index: f.len(), value: c.max(d), n }.into());
            }
            f.push(c * n + d);
        }
    }
    let f = SquareMap::from_table(n, f)?;
    let phi = CubeMap::from_table(n, file.Phi)?;
    let psi = CubeMap::from_table(n, file.Psi)?;
    Ok((f, phi, psi))
}

pub fn twist_to_file(t: &TwistDatum) -> TwistFile {
    let n = t.f.n();
    let f = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (c, d) = t.f.apply(a, b);
                    [c, d]
                })
                .collect()
        })
        .collect();
    TwistFile { F: f, Phi: t.phi.table().to_vec(), Psi: t.psi.table().to_vec() }
}
