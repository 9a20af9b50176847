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

#include "chamon/blossom.h"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace chamon {

// Vertices are 1..n_, blossoms n_+1..n_x_. Index 0 means "none".
// s_ labels: 0 = outer (S), 1 = inner (T), -1 = unlabelled.

void BlossomMatcher::update_slack(int u, int x) {
    if (!slack_[x] || slack_of(g(u, x)) < slack_of(g(slack_[x], x))) {
        slack_[x] = u;
    }
}

void BlossomMatcher::set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; u++) {
        if (g(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0) {
            update_slack(u, x);
        }
    }
}

void BlossomMatcher::q_push(int x) {
    if (x <= n_) {
        queue_.push_back(x);
    } else {
        for (int y : flower_[x]) {
            q_push(y);
        }
    }
}

void BlossomMatcher::set_st(int x, int b) {
    st_[x] = b;
    if (x > n_) {
        for (int y : flower_[x]) {
            set_st(y, b);
        }
    }
}

int BlossomMatcher::get_pr(int b, int xr) {
    auto &f = flower_[b];
    int pr = int(std::find(f.begin(), f.end(), xr) - f.begin());
    if (pr % 2 == 1) {
        std::reverse(f.begin() + 1, f.end());
        return int(f.size()) - pr;
    }
    return pr;
}

void BlossomMatcher::set_match(int u, int v) {
    match_[u] = g(u, v).v;
    if (u > n_) {
        Edge e = g(u, v);
        int xr = flower_from(u, e.u);
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; i++) {
            set_match(flower_[u][i], flower_[u][i ^ 1]);
        }
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }
}

void BlossomMatcher::augment(int u, int v) {
    while (true) {
        int xnv = st_[match_[u]];
        set_match(u, v);
        if (!xnv) {
            return;
        }
        set_match(xnv, st_[pa_[xnv]]);
        u = st_[pa_[xnv]];
        v = xnv;
    }
}

int BlossomMatcher::get_lca(int u, int v) {
    for (++lca_stamp_; u || v; std::swap(u, v)) {
        if (u == 0) {
            continue;
        }
        if (vis_[u] == lca_stamp_) {
            return u;
        }
        vis_[u] = lca_stamp_;
        u = st_[match_[u]];
        if (u) {
            u = st_[pa_[u]];
        }
    }
    return 0;
}

void BlossomMatcher::add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) {
        b++;
    }
    if (b > n_x_) {
        n_x_++;
    }
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    auto &f = flower_[b];
    f.clear();
    f.push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
        f.push_back(x);
        f.push_back(y = st_[match_[x]]);
        q_push(y);
    }
    std::reverse(f.begin() + 1, f.end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
        f.push_back(x);
        f.push_back(y = st_[match_[x]]);
        q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; x++) {
        g(b, x).w = 0;
        g(x, b).w = 0;
    }
    for (int x = 1; x <= n_; x++) {
        flower_from(b, x) = 0;
    }
    for (int xs : f) {
        for (int x = 1; x <= n_x_; x++) {
            if (g(b, x).w == 0 || slack_of(g(xs, x)) < slack_of(g(b, x))) {
                g(b, x) = g(xs, x);
                g(x, b) = g(x, xs);
            }
        }
        for (int x = 1; x <= n_; x++) {
            if (flower_from(xs, x)) {
                flower_from(b, x) = xs;
            }
        }
    }
    set_slack(b);
}

void BlossomMatcher::expand_blossom(int b) {
    for (int x : flower_[b]) {
        set_st(x, x);
    }
    int xr = flower_from(b, g(b, pa_[b]).u);
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
        int xs = flower_[b][i];
        int xns = flower_[b][i + 1];
        pa_[xs] = g(xns, xs).u;
        s_[xs] = 1;
        s_[xns] = 0;
        slack_[xs] = 0;
        set_slack(xns);
        q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = size_t(pr) + 1; i < flower_[b].size(); i++) {
        int xs = flower_[b][i];
        s_[xs] = -1;
        set_slack(xs);
    }
    st_[b] = 0;
}

bool BlossomMatcher::on_found_edge(const Edge &e) {
    int u = st_[e.u];
    int v = st_[e.v];
    if (s_[v] == -1) {
        pa_[v] = e.u;
        s_[v] = 1;
        int nu = st_[match_[v]];
        slack_[v] = 0;
        slack_[nu] = 0;
        s_[nu] = 0;
        q_push(nu);
    } else if (s_[v] == 0) {
        int lca = get_lca(u, v);
        if (!lca) {
            augment(u, v);
            augment(v, u);
            return true;
        }
        add_blossom(u, lca, v);
    }
    return false;
}

bool BlossomMatcher::matching() {
    std::fill(s_.begin() + 1, s_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    for (int x = 1; x <= n_x_; x++) {
        if (st_[x] == x && !match_[x]) {
            pa_[x] = 0;
            s_[x] = 0;
            q_push(x);
        }
    }
    if (queue_.empty()) {
        return false;
    }
    constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
    while (true) {
        while (!queue_.empty()) {
            int u = queue_.front();
            queue_.pop_front();
            if (s_[st_[u]] == 1) {
                continue;
            }
            for (int v = 1; v <= n_; v++) {
                if (g(u, v).w > 0 && st_[u] != st_[v]) {
                    if (slack_of(g(u, v)) == 0) {
                        if (on_found_edge(g(u, v))) {
                            return true;
                        }
                    } else {
                        update_slack(u, st_[v]);
                    }
                }
            }
        }
        int64_t delta = kInf;
        for (int b = n_ + 1; b <= n_x_; b++) {
            if (st_[b] == b && s_[b] == 1) {
                delta = std::min(delta, lab_[b] / 2);
            }
        }
        for (int x = 1; x <= n_x_; x++) {
            if (st_[x] == x && slack_[x]) {
                if (s_[x] == -1) {
                    delta = std::min(delta, slack_of(g(slack_[x], x)));
                } else if (s_[x] == 0) {
                    delta = std::min(delta, slack_of(g(slack_[x], x)) / 2);
                }
            }
        }
        for (int u = 1; u <= n_; u++) {
            if (s_[st_[u]] == 0) {
                if (lab_[u] <= delta) {
                    return false;
                }
                lab_[u] -= delta;
            } else if (s_[st_[u]] == 1) {
                lab_[u] += delta;
            }
        }
        for (int b = n_ + 1; b <= n_x_; b++) {
            if (st_[b] == b) {
                if (s_[st_[b]] == 0) {
                    lab_[b] += delta * 2;
                } else if (s_[st_[b]] == 1) {
                    lab_[b] -= delta * 2;
                }
            }
        }
        queue_.clear();
        for (int x = 1; x <= n_x_; x++) {
            if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && slack_of(g(slack_[x], x)) == 0) {
                if (on_found_edge(g(slack_[x], x))) {
                    return true;
                }
            }
        }
        for (int b = n_ + 1; b <= n_x_; b++) {
            if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) {
                expand_blossom(b);
            }
        }
    }
}

std::vector<int> BlossomMatcher::solve(int num_nodes, const std::vector<int64_t> &weights) {
    if (num_nodes % 2 != 0) {
        // Planes always see an even number of defects; an odd count means a
        // syndrome or plane-membership bug upstream.
        assert(false && "perfect matching requested on an odd vertex count");
        std::abort();
    }
    if (weights.size() != size_t(num_nodes) * num_nodes) {
        throw std::invalid_argument("BlossomMatcher: weight matrix has the wrong size");
    }
    std::vector<int> mate(num_nodes, -1);
    if (num_nodes == 0) {
        return mate;
    }
    if (num_nodes == 2) {
        mate[0] = 1;
        mate[1] = 0;
        return mate;
    }

    n_ = num_nodes;
    n_x_ = n_;
    stride_ = size_t(2 * n_ + 1);
    edges_.assign(stride_ * stride_, Edge{});
    flower_from_.assign(stride_ * stride_, 0);
    lab_.assign(stride_, 0);
    match_.assign(stride_, 0);
    slack_.assign(stride_, 0);
    st_.assign(stride_, 0);
    pa_.assign(stride_, 0);
    s_.assign(stride_, -1);
    vis_.assign(stride_, 0);
    lca_stamp_ = 0;
    flower_.assign(stride_, {});

    int64_t max_w = 0;
    for (int64_t w : weights) {
        if (w < 0) {
            throw std::invalid_argument("BlossomMatcher: negative weight");
        }
        max_w = std::max(max_w, w);
    }
    // Every transformed weight is >= 1, so the maximum-weight matching is perfect.
    int64_t ceiling = max_w + 1;
    int64_t w_max = 0;
    for (int u = 1; u <= n_x_ + n_; u++) {
        for (int v = 1; v <= n_x_ + n_; v++) {
            g(u, v) = Edge{u, v, 0};
        }
    }
    for (int u = 1; u <= n_; u++) {
        for (int v = 1; v <= n_; v++) {
            if (u != v) {
                int64_t w = ceiling - weights[size_t(u - 1) * n_ + (v - 1)];
                g(u, v).w = w;
                w_max = std::max(w_max, w);
            }
        }
    }
    for (int u = 0; u <= n_; u++) {
        st_[u] = u;
        flower_[u].clear();
    }
    for (int u = 1; u <= n_; u++) {
        for (int v = 1; v <= n_; v++) {
            flower_from(u, v) = (u == v ? u : 0);
        }
        lab_[u] = w_max;
    }
    while (matching()) {
    }
    for (int u = 1; u <= n_; u++) {
        mate[u - 1] = match_[u] - 1;
    }
    for (int u = 0; u < n_; u++) {
        if (mate[u] < 0) {
            throw std::logic_error("BlossomMatcher: matching is not perfect");
        }
    }
    return mate;
}

}  // namespace chamon
