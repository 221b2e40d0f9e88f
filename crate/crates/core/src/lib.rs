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

//! Recognition of graph classes defined through maximal cliques and
//! maximal stable sets: CIS, split, equistable, triangle graphs and their
//! relatives, with checkable certificates.

pub mod enumerate;
pub mod equistable;
pub mod graph;
pub mod hasse;
pub mod linegraph;
pub mod lp;
pub mod recognizers;
pub mod search;

pub use graph::{Graph, GraphError, VertexSet};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Linear program over exact rationals.
pub type ExactProgram = lp::LinearProgram<Rational>;
/// Linear program over `f64`, tolerance-based.
pub type FloatProgram = lp::LinearProgram<f64>;
