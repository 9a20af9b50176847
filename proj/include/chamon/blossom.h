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

#ifndef CHAMON_BLOSSOM_H
#define CHAMON_BLOSSOM_H

#include <cstdint>
#include <deque>
#include <vector>

namespace chamon {

/// Exact minimum-weight perfect matching on a complete graph with integer
/// weights, using Edmonds' blossom algorithm with dual variables (O(V^3)).
///
/// Internally solves maximum-weight matching on (C - w) with C larger than
/// every weight, which on a complete graph with an even vertex count is a
/// perfect matching of minimum total w.
class BlossomMatcher {
   public:
    /// `weights` is a row-major num_nodes x num_nodes symmetric matrix of
    /// nonnegative values. Returns mate[i] for every node.
    /// num_nodes must be even; an odd count is a caller bug and aborts.
    std::vector<int> solve(int num_nodes, const std::vector<int64_t> &weights);

   private:
    struct Edge {
        int u = 0;
        int v = 0;
        int64_t w = 0;
    };

    Edge &g(int u, int v) {
        return edges_[size_t(u) * stride_ + v];
    }
    int &flower_from(int b, int x) {
        return flower_from_[size_t(b) * stride_ + x];
    }
    int64_t slack_of(const Edge &e) const {
        return lab_[e.u] + lab_[e.v] - e.w * 2;
    }

    void update_slack(int u, int x);
    void set_slack(int x);
    void q_push(int x);
    void set_st(int x, int b);
    int get_pr(int b, int xr);
    void set_match(int u, int v);
    void augment(int u, int v);
    int get_lca(int u, int v);
    void add_blossom(int u, int lca, int v);
    void expand_blossom(int b);
    bool on_found_edge(const Edge &e);
    bool matching();

    int n_ = 0;
    int n_x_ = 0;
    size_t stride_ = 0;
    int lca_stamp_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> flower_from_;
    std::vector<int64_t> lab_;
    std::vector<int> match_, slack_, st_, pa_, s_, vis_;
    std::vector<std::vector<int>> flower_;
    std::deque<int> queue_;
};

}  // namespace chamon

#endif
