#pragma once

// Small GF(2) helpers: a dense linear solver and a union-find with parity.

#include <cstdint>
#include <optional>
#include <vector>

namespace fatsurf::detail {

// Dense GF(2) solver, one word per 64 variables.
class Gf2System {
public:
    explicit Gf2System(int vars) : vars_(vars), words_((vars + 64) / 64) {}

    void add_relation(const std::vector<int>& vs, int rhs) {
        std::vector<uint64_t> row(words_, 0);
        for (int v : vs) row[v / 64] ^= uint64_t(1) << (v % 64);
        if (rhs) row[words_ - 1] ^= uint64_t(1) << (vars_ % 64);
        rows_.push_back(std::move(row));
    }

    // Returns an assignment (free variables zero) or nullopt if inconsistent.
    std::optional<std::vector<int>> solve() {
        int rhs_word = vars_ / 64, rhs_bit = vars_ % 64;
        std::vector<int> pivot_of_row;
        size_t r = 0;
        for (int col = 0; col < vars_ && r < rows_.size(); ++col) {
            size_t sel = r;
            while (sel < rows_.size() && !bit(rows_[sel], col)) ++sel;
            if (sel == rows_.size()) continue;
            std::swap(rows_[r], rows_[sel]);
            for (size_t i = 0; i < rows_.size(); ++i)
                if (i != r && bit(rows_[i], col))
                    for (int w = 0; w < words_; ++w) rows_[i][w] ^= rows_[r][w];
            pivot_of_row.push_back(col);
            ++r;
        }
        for (size_t i = r; i < rows_.size(); ++i)
            if (rows_[i][rhs_word] >> rhs_bit & 1) return std::nullopt;
        std::vector<int> assign(vars_, 0);
        for (size_t i = 0; i < r; ++i)
            assign[pivot_of_row[i]] = static_cast<int>(rows_[i][rhs_word] >> rhs_bit & 1);
        return assign;
    }

private:
    static bool bit(const std::vector<uint64_t>& row, int col) {
        return row[col / 64] >> (col % 64) & 1;
    }
    int vars_;
    int words_;
    std::vector<std::vector<uint64_t>> rows_;
};

// Union-find tracking parity to the class representative; relate() returns
// false on a contradictory relation.
class ParityUnionFind {
public:
    explicit ParityUnionFind(int n) : parent_(n), parity_(n, 0) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    std::pair<int, int> find(int a) {
        if (parent_[a] == a) return {a, 0};
        auto [root, par] = find(parent_[a]);
        parity_[a] ^= par;
        parent_[a] = root;
        return {root, parity_[a]};
    }

    // enforce x(a) xor x(b) == p
    bool relate(int a, int b, int p) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == p;
        parent_[ra] = rb;
        parity_[ra] = pa ^ pb ^ p;
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> parity_;
};

}  // namespace fatsurf::detail
