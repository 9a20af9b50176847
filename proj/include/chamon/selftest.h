// Copyright 2026 The Chamon Decoder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CHAMON_SELFTEST_H
#define CHAMON_SELFTEST_H

#include <iosfwd>
#include <string>
#include <vector>

namespace chamon {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast structural and statistical property checks over small lattices.
std::vector<SelftestCheck> run_selftest_checks();

/// Prints one line per check; returns true if all passed.
bool run_selftest(std::ostream &out);

}  // namespace chamon

#endif
