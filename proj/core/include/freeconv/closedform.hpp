// Copyright 2026 The freeconv Authors
//
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

#pragma once

// Explicit densities of the families with elementary closed forms.
//
// Endpoint behaviour near 0 (rho ~ x^-alpha) and the matching quadrature
// substitution power k (x = t^k):
//   MP(1)   alpha 1/2  k 2      AS      alpha 1/2  k 2 (both edges)
//   FC2     alpha 2/3  k 3      FC3     alpha 3/4  k 4
//   MPSQRT  alpha 1/3  k 3      MPCBRT  alpha 1/4  k 4
//   BURES1  alpha 2/3  k 3      BURES2  alpha 3/4  k 4
// Soft edges (MP(c != 1) both ends, every upper edge except AS) use k 2.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freeconv/measures.hpp"

namespace freeconv::closedform {

enum class Tag { MP, AS, FC2, FC3, MPSQRT, MPCBRT, BURES1, BURES2 };

struct Family {
  Tag tag = Tag::MP;
  /// Rectangularity, used by MP only.
  Rational c = 1;
  friend bool operator==(const Family&, const Family&) = default;
};

Family mp(const Rational& c);
Family family(Tag tag);

struct FamilySupport {
  double lo = 0.0;
  double hi = 0.0;
  /// Weight of the atom at zero (MP with c > 1 only).
  double atom = 0.0;
  int lo_power = 2;
  int hi_power = 2;
};

FamilySupport support(const Family& f);

/// Density of the continuous part; exactly 0 outside the closed support
/// and at singular endpoints.
double eval(const Family& f, double x);

/// atom + int_lo^x eval (adaptive Gauss-Kronrod with edge substitution).
/// Nondecreasing, in [0, 1]. Throws QuadratureError above 1e-9 estimated error.
double cdf(const Family& f, double x);

/// The measure spec with the same S-transform.
measures::MeasureSpec equivalent_spec(const Family& f);

/// "mp(1/4)", "as", "fc2", "fc3", "mp-sqrt", "mp-cbrt", "bures", "bures2".
std::string name(const Family& f);

/// Accepts the names above and the equivalent grammar spellings
/// (e.g. "mp(1)^3", "as*mp(1)"); nullopt when there is no closed form.
std::optional<Family> parse_family(std::string_view text);

/// MP(1), MP(1/4), AS, FC2, FC3, MPSQRT, MPCBRT, BURES1, BURES2.
std::vector<Family> reference_families();

}  // namespace freeconv::closedform
