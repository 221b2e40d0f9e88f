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

use cisgraph::graph::gallery::{one_indexed, G12_CLIQUES, G12_STABLES};
use cisgraph::graph::{
    encode_graph6, encode_graph6_big, gallery, gallery_big, parse_graph, parse_graph6, projective_split, random_split,
    GalleryId,
};
use cisgraph::recognizers::{classify, verify_report, ClassReport, Options, Status};

fn small_ids() -> impl Iterator<Item = GalleryId> {
    GalleryId::ALL.into_iter().filter(|id| !id.is_big())
}

#[test]
fn graph6_round_trip_for_gallery() {
    for id in small_ids() {
        let g = gallery(id).unwrap();
        assert_eq!(g.n(), id.order());
        let s = encode_graph6(&g);
        assert_eq!(parse_graph6(&s).unwrap(), g, "{id}");
        assert_eq!(parse_graph(&s).unwrap(), g, "{id}");
    }
    for id in [GalleryId::L, GalleryId::LLbar] {
        let g = gallery_big(id);
        assert_eq!(g.n(), id.order());
        assert!(encode_graph6_big(&g).starts_with('~'));
    }
}

#[test]
fn gallery_ids_parse_from_names() {
    for id in GalleryId::ALL {
        assert_eq!(id.name().parse::<GalleryId>().unwrap(), id);
        assert_eq!(id.name().to_lowercase().parse::<GalleryId>().unwrap(), id);
    }
    assert!("G14".parse::<GalleryId>().is_err());
}

#[test]
fn g12_pairs_lie_in_exactly_one_family() {
    let cliques: Vec<_> = G12_CLIQUES.iter().map(|c| one_indexed(c)).collect();
    let stables: Vec<_> = G12_STABLES.iter().map(|s| one_indexed(s)).collect();
    for u in 0..12 {
        for v in u + 1..12 {
            let pair = one_indexed(&[u + 1, v + 1]);
            let in_c = cliques.iter().any(|&c| pair.is_subset(c));
            let in_s = stables.iter().any(|&s| pair.is_subset(s));
            assert!(in_c ^ in_s, "{u} {v}");
        }
    }
}

#[test]
fn projective_split_degrees() {
    let g = projective_split(3).unwrap();
    assert_eq!(g.n(), 26);
    for p in 0..13 {
        assert_eq!(g.degree(p), 12 + 4);
    }
    for line in 13..26 {
        assert_eq!(g.degree(line), 4);
    }
    assert!(projective_split(6).is_err());
}

#[test]
fn random_split_is_seeded() {
    assert_eq!(random_split(5, 6, 9).unwrap(), random_split(5, 6, 9).unwrap());
    assert_ne!(random_split(5, 6, 9).unwrap(), random_split(5, 6, 10).unwrap());
}

#[test]
fn gallery_reports_survive_json_and_verify() {
    for id in small_ids() {
        let g = gallery(id).unwrap();
        let report = classify(&g, Some(id.to_string()), &[], Options::default()).unwrap();
        assert_eq!(report.properties.len(), 60);
        assert!(report.properties.iter().all(|p| p.status != Status::Unsupported), "{id}");
        let text = serde_json::to_string(&report).unwrap();
        let back: ClassReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert!(verify_report(&back).unwrap().is_empty(), "{id}");
    }
}
