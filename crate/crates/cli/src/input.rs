// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Input sources: files, stdin and gallery constructions.

use std::io::Read;

use anyhow::{bail, Context, Result};
use cisgraph::graph::{gallery, gallery_big, parse_graph, parse_graph6, projective_split, random_split, random_split_big, BigGraph, GalleryId};
use cisgraph::Graph;

/// A gallery construction, possibly beyond 64 vertices.
pub enum Construction {
    Small(Graph),
    Big(BigGraph),
}

/// Resolves `NAME`, `projective:Q` or `random-split:K:L`.
pub fn construction(spec: &str, seed: u64) -> Result<(String, Construction)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<u64>().with_context(|| format!("bad number {s:?} in {spec:?}"));
    match parts.as_slice() {
        ["projective", q] => {
            let q = num(q)?;
            Ok((format!("projective:{q}"), Construction::Small(projective_split(q)?)))
        }
        ["random-split", k, l] => {
            let (k, l) = (num(k)? as usize, num(l)? as usize);
            let label = format!("random-split:{k}:{l}:seed={seed}");
            if k + l <= cisgraph::graph::MAX_VERTICES {
                Ok((label, Construction::Small(random_split(k, l, seed)?)))
            } else {
                Ok((label, Construction::Big(random_split_big(k, l, seed)?)))
            }
        }
        [name] => {
            let id: GalleryId = name.parse()?;
            if id.is_big() {
                Ok((id.name().to_string(), Construction::Big(gallery_big(id))))
            } else {
                Ok((id.name().to_string(), Construction::Small(gallery(id)?)))
            }
        }
        _ => bail!("unknown gallery construction {spec:?}"),
    }
}

/// Raw text of a path, or of stdin for `-`.
pub fn read_text(source: &str) -> Result<String> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))
    }
}

/// Graphs named by `source`. A file of several graph6 lines yields one
/// graph per line; anything else is a single graph6 or edge-list graph.
pub fn load_graphs(source: &str, seed: u64) -> Result<Vec<(String, Graph)>> {
    if let Some(spec) = source.strip_prefix("gallery:") {
        return match construction(spec, seed)? {
            (label, Construction::Small(g)) => Ok(vec![(label, g)]),
            (label, Construction::Big(g)) => {
                bail!("{label} has {} vertices; this command handles at most 64", g.n())
            }
        };
    }
    let text = read_text(source)?;
    let data: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let name = if source == "-" { "stdin" } else { source };
    if data.len() > 1 {
        let many: Option<Vec<(String, Graph)>> = data
            .iter()
            .map(|&(line, l)| parse_graph6(l).ok().map(|g| (format!("{name}:{line}"), g)))
            .collect();
        if let Some(many) = many {
            return Ok(many);
        }
    }
    let g = parse_graph(&text).with_context(|| format!("parsing {name}"))?;
    Ok(vec![(name.to_string(), g)])
}
