//! Triangle meshes in OFF and OBJ form, and their lower-star complexes.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use super::IoError;
use crate::complex::{lower_star_extend, FilteredComplex};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Mesh {
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

/// Where vertex heights come from.
#[derive(Clone, Debug, PartialEq)]
pub enum HeightSource {
    Z,
    /// Angle deficit `2π − Σ` incident triangle angles.
    Curvature,
    /// Sidecar file of `index value` lines.
    File(std::path::PathBuf),
}

impl std::str::FromStr for HeightSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "z" => HeightSource::Z,
            "curvature" => HeightSource::Curvature,
            path => HeightSource::File(path.into()),
        })
    }
}

impl std::fmt::Display for HeightSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeightSource::Z => f.write_str("z"),
            HeightSource::Curvature => f.write_str("curvature"),
            HeightSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl Mesh {
    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Every vertex, every triangle edge and every triangle, as sorted vertex lists.
    pub fn skeleton(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.positions.len()).map(|v| vec![v]).collect();
        let mut edges = Vec::with_capacity(3 * self.triangles.len());
        for t in &self.triangles {
            let mut t = *t;
            t.sort_unstable();
            edges.extend([[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]);
            out.push(t.to_vec());
        }
        edges.sort_unstable();
        edges.dedup();
        out.extend(edges.into_iter().map(|e| e.to_vec()));
        out
    }

    pub fn z_heights(&self) -> Vec<f64> {
        self.positions.iter().map(|p| p[2]).collect()
    }

    /// Discrete Gaussian curvature `2π − Σ θ` per vertex.
    pub fn angle_deficits(&self) -> Vec<f64> {
        let mut total = vec![0.0; self.positions.len()];
        for t in &self.triangles {
            for i in 0..3 {
                let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                total[a] += angle(self.positions[a], self.positions[b], self.positions[c]);
            }
        }
        total.into_iter().map(|s| 2.0 * PI - s).collect()
    }

    pub fn heights(&self, source: &HeightSource) -> Result<Vec<f64>, IoError> {
        match source {
            HeightSource::Z => Ok(self.z_heights()),
            HeightSource::Curvature => Ok(self.angle_deficits()),
            HeightSource::File(path) => parse_heights(&std::fs::read_to_string(path)?, self.positions.len()),
        }
    }

    /// Lower-star complex of the mesh for the given vertex heights.
    pub fn complex(&self, heights: &[f64]) -> Result<FilteredComplex, IoError> {
        Ok(lower_star_extend(heights, self.skeleton())?)
    }

    pub fn to_off(&self) -> String {
        let mut s = format!("OFF\n{} {} 0\n", self.positions.len(), self.triangles.len());
        for p in &self.positions {
            let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
        }
        for t in &self.triangles {
            let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
        }
        s
    }

    /// Mesh of the triangles of `k`, whose vertex labels index `positions`.
    /// Surviving vertices are renumbered in increasing label order.
    pub fn from_complex(k: &FilteredComplex, positions: &[[f64; 3]]) -> Mesh {
        let mut labels: Vec<usize> = k.ids_of_dim(0).map(|v| k.vertices_of(v)[0]).collect();
        labels.sort_unstable();
        let index = |x: usize| labels.binary_search(&x).unwrap();
        let triangles = k
            .ids_of_dim(2)
            .map(|t| {
                let vs = k.vertices_of(t);
                [index(vs[0]), index(vs[1]), index(vs[2])]
            })
            .collect();
        Mesh {
            positions: labels.iter().map(|&x| positions[x]).collect(),
            triangles,
        }
    }
}

fn angle(at: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - at[0], b[1] - at[1], b[2] - at[2]];
    let v = [c[0] - at[0], c[1] - at[1], c[2] - at[2]];
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    norm.atan2(dot)
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, IoError> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, IoError> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected an index, found {tok:?}")))
}

fn check_triangle(t: [usize; 3], n: usize, line: usize) -> Result<[usize; 3], IoError> {
    if let Some(&bad) = t.iter().find(|&&x| x >= n) {
        return Err(parse_err(line, format!("vertex index {bad} out of range")));
    }
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(parse_err(line, "degenerate triangle"));
    }
    Ok(t)
}

pub fn parse_off(text: &str) -> Result<Mesh, IoError> {
    // tokens with their 1-based line numbers, comments stripped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(parse_err(first_line, "missing OFF header"));
    }
    let rest: Vec<&str> = header_tokens.collect();
    let (count_line, counts): (usize, Vec<&str>) = if rest.is_empty() {
        let (n, l) = lines.next().ok_or_else(|| parse_err(first_line, "missing counts"))?;
        (n, l.split_whitespace().collect())
    } else {
        (first_line, rest)
    };
    if counts.len() < 2 {
        return Err(parse_err(count_line, "expected vertex and face counts"));
    }
    let nv = parse_usize(counts[0], count_line)?;
    let nf = parse_usize(counts[1], count_line)?;

    let mut mesh = Mesh::default();
    for _ in 0..nv {
        let (n, l) = lines.next().ok_or_else(|| parse_err(0, "unexpected end of file in vertices"))?;
        let tok: Vec<&str> = l.split_whitespace().collect();
        if tok.len() < 3 {
            return Err(parse_err(n, "vertex needs three coordinates"));
        }
        mesh.positions
            .push([parse_f64(tok[0], n)?, parse_f64(tok[1], n)?, parse_f64(tok[2], n)?]);
    }
    for _ in 0..nf {
        let (n, l) = lines.next().ok_or_else(|| parse_err(0, "unexpected end of file in faces"))?;
        let tok: Vec<&str> = l.split_whitespace().collect();
        let k = parse_usize(tok[0], n)?;
        if k != 3 {
            return Err(IoError::NonTriangleFace { line: n, vertices: k });
        }
        if tok.len() < 4 {
            return Err(parse_err(n, "face lists fewer indices than declared"));
        }
        let t = [parse_usize(tok[1], n)?, parse_usize(tok[2], n)?, parse_usize(tok[3], n)?];
        mesh.triangles.push(check_triangle(t, nv, n)?);
    }
    Ok(mesh)
}

pub fn parse_obj(text: &str) -> Result<Mesh, IoError> {
    let mut mesh = Mesh::default();
    let mut faces = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let mut tok = line.split('#').next().unwrap_or("").split_whitespace();
        match tok.next() {
            Some("v") => {
                let c: Vec<&str> = tok.take(3).collect();
                if c.len() < 3 {
                    return Err(parse_err(n, "vertex needs three coordinates"));
                }
                mesh.positions
                    .push([parse_f64(c[0], n)?, parse_f64(c[1], n)?, parse_f64(c[2], n)?]);
            }
            Some("f") => {
                let refs: Vec<&str> = tok.collect();
                if refs.len() != 3 {
                    return Err(IoError::NonTriangleFace {
                        line: n,
                        vertices: refs.len(),
                    });
                }
                let mut t = [0usize; 3];
                for (slot, r) in t.iter_mut().zip(&refs) {
                    let head = r.split('/').next().unwrap_or("");
                    let idx: i64 = head
                        .parse()
                        .map_err(|_| parse_err(n, format!("bad vertex reference {r:?}")))?;
                    // 1-based, negative counts back from the latest vertex
                    let resolved = if idx > 0 {
                        idx - 1
                    } else {
                        mesh.positions.len() as i64 + idx
                    };
                    if idx == 0 || resolved < 0 {
                        return Err(parse_err(n, format!("bad vertex reference {r:?}")));
                    }
                    *slot = resolved as usize;
                }
                faces.push((n, t));
            }
            _ => {}
        }
    }
    let nv = mesh.positions.len();
    for (n, t) in faces {
        mesh.triangles.push(check_triangle(t, nv, n)?);
    }
    Ok(mesh)
}

/// Parses `index value` lines; every vertex needs exactly one value.
pub fn parse_heights(text: &str, vertex_count: usize) -> Result<Vec<f64>, IoError> {
    let mut heights = vec![None; vertex_count];
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 2 {
            return Err(parse_err(n, "expected `index value`"));
        }
        let idx = parse_usize(tok[0], n)?;
        let value = parse_f64(tok[1], n)?;
        if !value.is_finite() {
            return Err(parse_err(n, "height must be finite"));
        }
        let slot = heights.get_mut(idx).ok_or(IoError::UnknownVertexInHeightFile(idx))?;
        if slot.replace(value).is_some() {
            return Err(parse_err(n, format!("vertex {idx} given twice")));
        }
    }
    heights
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or(IoError::MissingHeight(i)))
        .collect()
}

/// Reads an `.off` or `.obj` file, by extension.
pub fn read_mesh(path: &Path) -> Result<Mesh, IoError> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("obj") => parse_obj(&text),
        _ => parse_off(&text),
    }
}

/// Reads a mesh and builds its lower-star complex; vertex labels are mesh indices.
pub fn load_mesh(path: &Path, source: &HeightSource) -> Result<(FilteredComplex, Mesh), IoError> {
    let mesh = read_mesh(path)?;
    let heights = mesh.heights(source)?;
    Ok((mesh.complex(&heights)?, mesh))
}

pub fn write_off(path: &Path, mesh: &Mesh) -> Result<(), IoError> {
    std::fs::write(path, mesh.to_off())?;
    Ok(())
}
