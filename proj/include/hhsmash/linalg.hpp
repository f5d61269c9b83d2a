#pragma once

// Exact sparse linear algebra: column-echelon elimination with optional
// kernel tracking, rank/kernel/image, linear solving with infeasibility
// certificates, and homology subquotients.
//
// Elimination has three engines behind one facade: packed bit-plane echelon
// for F_2 and F_3 (the hot path for coboundary matrices), and a generic
// dense-column echelon for every other field at small sizes.  All three are
// deterministic: columns are consumed in index order and pivots are the
// lowest nonzero row, so bases are reproducible run to run.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hhsmash/errors.hpp"
#include "hhsmash/field.hpp"

namespace hhsmash {

template <class F>
using Vec = std::vector<typename F::Elt>;

template <class F>
using SparseCol = std::vector<std::pair<int, typename F::Elt>>; // (row, value), row-sorted

// ---------------------------------------------------------------- SparseMat

template <class F>
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<SparseCol<F>> col; // col[j] sorted by row, no zeros, no dups

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& c : col) n += c.size();
        return n;
    }
};

template <class F>
class MatBuilder {
public:
    MatBuilder(const F& field, int rows, int cols) : f_(field), m_{rows, cols, {}} {
        if (rows < 0 || cols < 0) throw StructuralError("negative matrix dimension");
        m_.col.resize(cols);
    }

    void add(int r, int c, typename F::Elt v) {
        if (r < 0 || r >= m_.rows || c < 0 || c >= m_.cols)
            throw StructuralError("matrix entry out of range");
        if (!f_.is_zero(v)) m_.col[c].emplace_back(r, v);
    }

    SparseMat<F> finish() {
        if (finished_) throw ContractError("MatBuilder::finish called twice");
        finished_ = true;
        for (auto& c : m_.col) {
            std::sort(c.begin(), c.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            SparseCol<F> out;
            for (auto& [r, v] : c) {
                if (!out.empty() && out.back().first == r)
                    out.back().second = f_.add(out.back().second, v);
                else
                    out.emplace_back(r, v);
            }
            std::erase_if(out, [&](const auto& e) { return f_.is_zero(e.second); });
            c = std::move(out);
        }
        return std::move(m_);
    }

private:
    F f_;
    SparseMat<F> m_;
    bool finished_ = false;
};

template <class F>
Vec<F> mat_apply(const F& f, const SparseMat<F>& m, const Vec<F>& x) {
    if (static_cast<int>(x.size()) != m.cols) throw StructuralError("mat_apply size mismatch");
    Vec<F> y(m.rows, f.zero());
    for (int j = 0; j < m.cols; ++j) {
        if (f.is_zero(x[j])) continue;
        for (const auto& [r, v] : m.col[j]) y[r] = f.add(y[r], f.mul(v, x[j]));
    }
    return y;
}

template <class F>
SparseMat<F> mat_mul(const F& f, const SparseMat<F>& a, const SparseMat<F>& b) {
    if (a.cols != b.rows) throw StructuralError("mat_mul shape mismatch");
    MatBuilder<F> out(f, a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j)
        for (const auto& [k, bv] : b.col[j])
            for (const auto& [r, av] : a.col[k]) out.add(r, j, f.mul(av, bv));
    return out.finish();
}

template <class F>
SparseMat<F> mat_add(const F& f, const SparseMat<F>& a, const SparseMat<F>& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw StructuralError("mat_add shape mismatch");
    MatBuilder<F> out(f, a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) {
        for (const auto& [r, v] : a.col[j]) out.add(r, j, v);
        for (const auto& [r, v] : b.col[j]) out.add(r, j, v);
    }
    return out.finish();
}

template <class F>
bool mat_is_zero(const SparseMat<F>& m) {
    for (const auto& c : m.col)
        if (!c.empty()) return false;
    return true;
}

template <class F>
SparseMat<F> mat_transpose(const F& f, const SparseMat<F>& m) {
    MatBuilder<F> out(f, m.cols, m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [r, v] : m.col[j]) out.add(j, r, v);
    return out.finish();
}

template <class F>
SparseMat<F> mat_identity(const F& f, int n) {
    MatBuilder<F> out(f, n, n);
    for (int i = 0; i < n; ++i) out.add(i, i, f.one());
    return out.finish();
}

// ------------------------------------------------- packed echelon engines

namespace detail {

// Column echelon over F_2; columns and tracking vectors are bit-packed.
class BitEchelon2 {
public:
    BitEchelon2(int nrows, int track_len, std::string label)
        : nrows_(nrows), words_((nrows + 63) / 64), tlen_(track_len),
          twords_((track_len + 63) / 64), label_(std::move(label)) {}

    bool add_col(const std::vector<int>& rows_set, int track_index) {
        std::vector<std::uint64_t> v(words_, 0);
        for (int r : rows_set) v[r >> 6] |= std::uint64_t(1) << (r & 63);
        std::vector<std::uint64_t> t;
        if (tlen_) {
            t.assign(twords_, 0);
            t[track_index >> 6] |= std::uint64_t(1) << (track_index & 63);
        }
        return insert(std::move(v), std::move(t));
    }

    bool insert(std::vector<std::uint64_t> v, std::vector<std::uint64_t> t) {
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) {
                if (tlen_) kernels_.push_back(std::move(t));
                return false;
            }
            auto it = cols_.find(lead);
            if (it == cols_.end()) {
                charge((words_ + twords_) * 8);
                cols_.emplace(lead, Stored{std::move(v), std::move(t)});
                return true;
            }
            const Stored& e = it->second;
            for (int w = 0; w < words_; ++w) v[w] ^= e.v[w];
            if (tlen_)
                for (int w = 0; w < twords_; ++w) t[w] ^= e.t[w];
        }
    }

    // Reduces v against the echelon without inserting; true iff it lies in the span.
    bool in_span(const std::vector<int>& rows_set) const {
        std::vector<std::uint64_t> v(words_, 0);
        for (int r : rows_set) v[r >> 6] |= std::uint64_t(1) << (r & 63);
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) return true;
            auto it = cols_.find(lead);
            if (it == cols_.end()) return false;
            for (int w = 0; w < words_; ++w) v[w] ^= it->second.v[w];
        }
    }

    // Coordinates of a vector over the inserted columns, if it lies in the span.
    std::optional<std::vector<int>> express(const std::vector<int>& rows_set) const {
        std::vector<std::uint64_t> v(words_, 0), t(twords_, 0);
        for (int r : rows_set) v[r >> 6] |= std::uint64_t(1) << (r & 63);
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) return unpack(t, tlen_);
            auto it = cols_.find(lead);
            if (it == cols_.end()) return std::nullopt;
            for (int w = 0; w < words_; ++w) v[w] ^= it->second.v[w];
            for (int w = 0; w < twords_; ++w) t[w] ^= it->second.t[w];
        }
    }

    int rank() const { return static_cast<int>(cols_.size()); }

    std::vector<std::vector<int>> kernel_rows() const {
        std::vector<std::vector<int>> out;
        for (const auto& t : kernels_) out.push_back(unpack(t, tlen_));
        return out;
    }

    std::vector<std::vector<int>> image_rows() const {
        std::vector<std::vector<int>> out;
        for (const auto& [lead, s] : cols_) out.push_back(unpack(s.v, nrows_));
        return out;
    }

private:
    struct Stored {
        std::vector<std::uint64_t> v;
        std::vector<std::uint64_t> t;
    };

    static std::vector<int> unpack(const std::vector<std::uint64_t>& v, int len) {
        std::vector<int> idx;
        for (int w = 0; w < static_cast<int>(v.size()); ++w) {
            std::uint64_t x = v[w];
            while (x) {
                int b = std::countr_zero(x);
                int pos = w * 64 + b;
                if (pos < len) idx.push_back(pos);
                x &= x - 1;
            }
        }
        return idx;
    }

    int lead_of(const std::vector<std::uint64_t>& v) const {
        for (int w = 0; w < words_; ++w)
            if (v[w]) return w * 64 + std::countr_zero(v[w]);
        return -1;
    }

    void charge(std::size_t bytes) {
        bytes_ += bytes;
        MemoryGuard::instance().charge(bytes_, label_);
    }

    int nrows_, words_, tlen_, twords_;
    std::string label_;
    std::size_t bytes_ = 0;
    std::map<int, Stored> cols_;
    std::vector<std::vector<std::uint64_t>> kernels_;
};

// Column echelon over F_3; a vector is two bit planes (lo = entries 1,
// hi = entries 2), so negation is a plane swap and addition is bitwise.
class BitEchelon3 {
public:
    BitEchelon3(int nrows, int track_len, std::string label)
        : nrows_(nrows), words_((nrows + 63) / 64), tlen_(track_len),
          twords_((track_len + 63) / 64), label_(std::move(label)) {}

    struct Planes {
        std::vector<std::uint64_t> lo, hi;
    };

    bool add_col(const std::vector<std::pair<int, std::uint32_t>>& entries, int track_index) {
        Planes v{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)};
        for (auto [r, val] : entries) {
            if (val == 1) v.lo[r >> 6] |= std::uint64_t(1) << (r & 63);
            else if (val == 2) v.hi[r >> 6] |= std::uint64_t(1) << (r & 63);
        }
        Planes t;
        if (tlen_) {
            t.lo.assign(twords_, 0);
            t.hi.assign(twords_, 0);
            t.lo[track_index >> 6] |= std::uint64_t(1) << (track_index & 63);
        }
        return insert(std::move(v), std::move(t));
    }

    bool insert(Planes v, Planes t) {
        for (;;) {
            auto [lead, val] = lead_of(v);
            if (lead < 0) {
                if (tlen_) kernels_.push_back(std::move(t));
                return false;
            }
            auto it = cols_.find(lead);
            if (it == cols_.end()) {
                charge((words_ + twords_) * 16);
                cols_.emplace(lead, Stored{std::move(v), std::move(t), val});
                return true;
            }
            const Stored& e = it->second;
            // cancel the lead: factor f with v_lead = f * e_lead, then v -= f*e,
            // i.e. v += (3-f)*e; val*e.val == 1 mod 3 means f == 1 (add -e).
            bool add_negated = (val * e.lead_val) % 3 == 1;
            add_planes(v, e.v, add_negated);
            if (tlen_) add_planes(t, e.t, add_negated);
        }
    }

    bool in_span(const std::vector<std::pair<int, std::uint32_t>>& entries) const {
        Planes v{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)};
        for (auto [r, val] : entries) {
            if (val == 1) v.lo[r >> 6] |= std::uint64_t(1) << (r & 63);
            else if (val == 2) v.hi[r >> 6] |= std::uint64_t(1) << (r & 63);
        }
        for (;;) {
            auto [lead, val] = lead_of(v);
            if (lead < 0) return true;
            auto it = cols_.find(lead);
            if (it == cols_.end()) return false;
            add_planes(v, it->second.v, (val * it->second.lead_val) % 3 == 1);
        }
    }

    std::optional<std::vector<std::pair<int, std::uint32_t>>>
    express(const std::vector<std::pair<int, std::uint32_t>>& entries) const {
        Planes v{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)};
        Planes t{std::vector<std::uint64_t>(twords_, 0), std::vector<std::uint64_t>(twords_, 0)};
        for (auto [r, val] : entries) {
            if (val == 1) v.lo[r >> 6] |= std::uint64_t(1) << (r & 63);
            else if (val == 2) v.hi[r >> 6] |= std::uint64_t(1) << (r & 63);
        }
        for (;;) {
            auto [lead, val] = lead_of(v);
            if (lead < 0) {
                // v + sum = 0, so v's coordinates are the negated accumulator
                std::swap(t.lo, t.hi);
                return unpack(t, tlen_);
            }
            auto it = cols_.find(lead);
            if (it == cols_.end()) return std::nullopt;
            bool neg = (val * it->second.lead_val) % 3 == 1;
            add_planes(v, it->second.v, neg);
            add_planes(t, it->second.t, neg);
        }
    }

    int rank() const { return static_cast<int>(cols_.size()); }

    std::vector<std::vector<std::pair<int, std::uint32_t>>> kernel_entries() const {
        std::vector<std::vector<std::pair<int, std::uint32_t>>> out;
        for (const auto& t : kernels_) out.push_back(unpack(t, tlen_));
        return out;
    }

    std::vector<std::vector<std::pair<int, std::uint32_t>>> image_entries() const {
        std::vector<std::vector<std::pair<int, std::uint32_t>>> out;
        for (const auto& [lead, s] : cols_) out.push_back(unpack(s.v, nrows_));
        return out;
    }

private:
    struct Stored {
        Planes v;
        Planes t;
        std::uint32_t lead_val;
    };

    static void add_planes(Planes& a, const Planes& bin, bool negate_b) {
        const auto& blo = negate_b ? bin.hi : bin.lo;
        const auto& bhi = negate_b ? bin.lo : bin.hi;
        for (std::size_t w = 0; w < a.lo.size(); ++w) {
            std::uint64_t alo = a.lo[w], ahi = a.hi[w], l0 = blo[w], h0 = bhi[w];
            a.lo[w] = (alo & ~l0 & ~h0) | (l0 & ~alo & ~ahi) | (ahi & h0);
            a.hi[w] = (ahi & ~l0 & ~h0) | (h0 & ~alo & ~ahi) | (alo & l0);
        }
    }

    std::pair<int, std::uint32_t> lead_of(const Planes& v) const {
        for (int w = 0; w < words_; ++w) {
            std::uint64_t both = v.lo[w] | v.hi[w];
            if (both) {
                int b = std::countr_zero(both);
                int row = w * 64 + b;
                std::uint32_t val = (v.lo[w] >> b) & 1 ? 1u : 2u;
                return {row, val};
            }
        }
        return {-1, 0};
    }

    static std::vector<std::pair<int, std::uint32_t>> unpack(const Planes& v, int len) {
        std::vector<std::pair<int, std::uint32_t>> out;
        for (int w = 0; w < static_cast<int>(v.lo.size()); ++w) {
            std::uint64_t both = v.lo[w] | v.hi[w];
            while (both) {
                int b = std::countr_zero(both);
                int pos = w * 64 + b;
                if (pos < len) out.emplace_back(pos, (v.lo[w] >> b) & 1 ? 1u : 2u);
                both &= both - 1;
            }
        }
        return out;
    }

    void charge(std::size_t bytes) {
        bytes_ += bytes;
        MemoryGuard::instance().charge(bytes_, label_);
    }

    int nrows_, words_, tlen_, twords_;
    std::string label_;
    std::size_t bytes_ = 0;
    std::map<int, Stored> cols_;
    std::vector<Planes> kernels_;
};

// Generic column echelon: dense columns over an arbitrary exact field.
template <class F>
class GenericEchelon {
public:
    GenericEchelon(const F& f, int nrows, int track_len, std::string label)
        : f_(f), nrows_(nrows), tlen_(track_len), label_(std::move(label)) {}

    bool add_col(const SparseCol<F>& entries, int track_index) {
        Vec<F> v(nrows_, f_.zero());
        for (const auto& [r, val] : entries) v[r] = val;
        Vec<F> t;
        if (tlen_) {
            t.assign(tlen_, f_.zero());
            t[track_index] = f_.one();
        }
        return insert(std::move(v), std::move(t));
    }

    bool insert(Vec<F> v, Vec<F> t) {
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) {
                if (tlen_) kernels_.push_back(std::move(t));
                return false;
            }
            auto it = cols_.find(lead);
            if (it == cols_.end()) {
                charge((v.size() + t.size()) * sizeof(typename F::Elt));
                cols_.emplace(lead, Stored{std::move(v), std::move(t)});
                return true;
            }
            const Stored& e = it->second;
            auto factor = f_.div(v[lead], e.v[lead]);
            for (int r = lead; r < nrows_; ++r)
                v[r] = f_.sub(v[r], f_.mul(factor, e.v[r]));
            if (tlen_)
                for (int i = 0; i < tlen_; ++i)
                    t[i] = f_.sub(t[i], f_.mul(factor, e.t[i]));
        }
    }

    bool in_span(const SparseCol<F>& entries) const {
        Vec<F> v(nrows_, f_.zero());
        for (const auto& [r, val] : entries) v[r] = val;
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) return true;
            auto it = cols_.find(lead);
            if (it == cols_.end()) return false;
            const Stored& e = it->second;
            auto factor = f_.div(v[lead], e.v[lead]);
            for (int r = lead; r < nrows_; ++r)
                v[r] = f_.sub(v[r], f_.mul(factor, e.v[r]));
        }
    }

    std::optional<Vec<F>> express(const SparseCol<F>& entries) const {
        Vec<F> v(nrows_, f_.zero()), t(tlen_, f_.zero());
        for (const auto& [r, val] : entries) v[r] = val;
        for (;;) {
            int lead = lead_of(v);
            if (lead < 0) {
                for (auto& x : t) x = f_.neg(x);
                return t;
            }
            auto it = cols_.find(lead);
            if (it == cols_.end()) return std::nullopt;
            const Stored& e = it->second;
            auto factor = f_.div(v[lead], e.v[lead]);
            for (int r = lead; r < nrows_; ++r)
                v[r] = f_.sub(v[r], f_.mul(factor, e.v[r]));
            for (int i = 0; i < tlen_; ++i) t[i] = f_.sub(t[i], f_.mul(factor, e.t[i]));
        }
    }

    int rank() const { return static_cast<int>(cols_.size()); }
    const std::vector<Vec<F>>& kernels() const { return kernels_; }

    std::vector<Vec<F>> image() const {
        std::vector<Vec<F>> out;
        for (const auto& [lead, s] : cols_) out.push_back(s.v);
        return out;
    }

private:
    struct Stored {
        Vec<F> v;
        Vec<F> t;
    };

    int lead_of(const Vec<F>& v) const {
        for (int r = 0; r < nrows_; ++r)
            if (!f_.is_zero(v[r])) return r;
        return -1;
    }

    void charge(std::size_t bytes) {
        bytes_ += bytes;
        MemoryGuard::instance().charge(bytes_, label_);
    }

    F f_;
    int nrows_, tlen_;
    std::string label_;
    std::size_t bytes_ = 0;
    std::map<int, Stored> cols_;
    std::vector<Vec<F>> kernels_;
};

} // namespace detail

// ----------------------------------------------------------- Eliminator

// Facade over the three echelon engines.  Columns are fed in index order;
// when tracking is on, every column that fails to extend the rank leaves a
// kernel coordinate vector (length = the column capacity given upfront).
template <class F>
class Eliminator {
public:
    Eliminator(const F& f, int nrows, int ncols_capacity, bool track,
               std::string label = "matrix")
        : f_(f), nrows_(nrows), cap_(ncols_capacity), track_(track) {
        int tlen = track ? ncols_capacity : 0;
        if constexpr (std::is_same_v<F, FpField>) {
            if (f.characteristic() == 2) {
                eng_.template emplace<E2>(nrows, tlen, label);
                return;
            }
            if (f.characteristic() == 3) {
                eng_.template emplace<E3>(nrows, tlen, label);
                return;
            }
        }
        eng_.template emplace<EG>(f, nrows, tlen, std::move(label));
    }

    bool add_col(const SparseCol<F>& entries) {
        int idx = fed_++;
        if (track_ && idx >= cap_) throw StructuralError("eliminator capacity exceeded");
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) {
                std::vector<int> rows;
                rows.reserve(entries.size());
                for (const auto& [r, v] : entries)
                    if (v & 1) rows.push_back(r);
                return e2->add_col(rows, idx);
            }
            if (auto* e3 = std::get_if<E3>(&eng_)) return e3->add_col(entries, idx);
        }
        return std::get<EG>(eng_).add_col(entries, idx);
    }

    void add_matrix(const SparseMat<F>& m) {
        if (m.rows != nrows_) throw StructuralError("eliminator row mismatch");
        for (const auto& c : m.col) add_col(c);
    }

    bool in_span(const SparseCol<F>& entries) const {
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) {
                std::vector<int> rows;
                for (const auto& [r, v] : entries)
                    if (v & 1) rows.push_back(r);
                return e2->in_span(rows);
            }
            if (auto* e3 = std::get_if<E3>(&eng_)) return e3->in_span(entries);
        }
        return std::get<EG>(eng_).in_span(entries);
    }

    int rank() const {
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) return e2->rank();
            if (auto* e3 = std::get_if<E3>(&eng_)) return e3->rank();
        }
        return std::get<EG>(eng_).rank();
    }

    // Coordinates of v over the columns fed so far (nullopt when outside the
    // span).  The returned vector has one slot per column capacity.
    std::optional<Vec<F>> express(const SparseCol<F>& entries) const {
        if (!track_) throw ContractError("express needs a tracking eliminator");
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) {
                std::vector<int> rows;
                for (const auto& [r, v] : entries)
                    if (v & 1) rows.push_back(r);
                auto got = e2->express(rows);
                if (!got) return std::nullopt;
                Vec<F> out(cap_, f_.zero());
                for (int r : *got) out[r] = f_.one();
                return out;
            }
            if (auto* e3 = std::get_if<E3>(&eng_)) {
                auto got = e3->express(entries);
                if (!got) return std::nullopt;
                Vec<F> out(cap_, f_.zero());
                for (auto [r, val] : *got) out[r] = val;
                return out;
            }
        }
        auto got = std::get<EG>(eng_).express(entries);
        if (!got) return std::nullopt;
        got->resize(cap_, f_.zero());
        return got;
    }

    std::vector<Vec<F>> kernel_basis() const {
        std::vector<Vec<F>> out;
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) {
                for (const auto& rows : e2->kernel_rows()) {
                    Vec<F> v(cap_, f_.zero());
                    for (int r : rows) v[r] = f_.one();
                    out.push_back(std::move(v));
                }
                return out;
            }
            if (auto* e3 = std::get_if<E3>(&eng_)) {
                for (const auto& ent : e3->kernel_entries()) {
                    Vec<F> v(cap_, f_.zero());
                    for (auto [r, val] : ent) v[r] = val;
                    out.push_back(std::move(v));
                }
                return out;
            }
        }
        for (const auto& k : std::get<EG>(eng_).kernels()) out.push_back(k);
        return out;
    }

    std::vector<Vec<F>> image_basis() const {
        std::vector<Vec<F>> out;
        if constexpr (std::is_same_v<F, FpField>) {
            if (auto* e2 = std::get_if<E2>(&eng_)) {
                for (const auto& rows : e2->image_rows()) {
                    Vec<F> v(nrows_, f_.zero());
                    for (int r : rows) v[r] = f_.one();
                    out.push_back(std::move(v));
                }
                return out;
            }
            if (auto* e3 = std::get_if<E3>(&eng_)) {
                for (const auto& ent : e3->image_entries()) {
                    Vec<F> v(nrows_, f_.zero());
                    for (auto [r, val] : ent) v[r] = val;
                    out.push_back(std::move(v));
                }
                return out;
            }
        }
        for (const auto& k : std::get<EG>(eng_).image()) out.push_back(k);
        return out;
    }

private:
    using E2 = detail::BitEchelon2;
    using E3 = detail::BitEchelon3;
    using EG = detail::GenericEchelon<F>;

    F f_;
    int nrows_, cap_;
    bool track_;
    int fed_ = 0;
    std::variant<std::monostate, E2, E3, EG> eng_;
};

// ---------------------------------------------------------- rank / kernel

struct KernelImage_tag {};

template <class F>
struct KernelImage {
    std::vector<Vec<F>> kernel; // vectors in F^cols
    std::vector<Vec<F>> image;  // vectors in F^rows
    int rank = 0;
};

template <class F>
int rank(const F& f, const SparseMat<F>& m, const std::string& label = "matrix") {
    Eliminator<F> e(f, m.rows, m.cols, false, label);
    e.add_matrix(m);
    return e.rank();
}

template <class F>
KernelImage<F> kernel_image(const F& f, const SparseMat<F>& m,
                            const std::string& label = "matrix") {
    Eliminator<F> e(f, m.rows, m.cols, true, label);
    e.add_matrix(m);
    KernelImage<F> out;
    out.kernel = e.kernel_basis();
    out.image = e.image_basis();
    out.rank = e.rank();
    if (out.rank + static_cast<int>(out.kernel.size()) != m.cols)
        throw StructuralError("rank-nullity violation (internal)");
    return out;
}

// ------------------------------------------------------------ solve_linear

// Either a solution x of m x = b, or a left kernel vector y with y.b != 0
// witnessing infeasibility.
template <class F>
struct SolveOutcome {
    std::optional<Vec<F>> x;
    std::optional<Vec<F>> infeasibility_witness;
    bool feasible() const { return x.has_value(); }
};

template <class F>
typename F::Elt dot(const F& f, const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) throw StructuralError("dot size mismatch");
    auto s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

template <class F>
SolveOutcome<F> solve_linear(const F& f, const SparseMat<F>& m, const Vec<F>& b,
                             const std::string& label = "system") {
    if (static_cast<int>(b.size()) != m.rows) throw StructuralError("solve_linear dimension mismatch");
    // Feed [m | b] tracked; if b fails to extend the rank its kernel vector
    // ends (..., c) with c != 0 and x = -coords/c solves.
    Eliminator<F> e(f, m.rows, m.cols + 1, true, label);
    e.add_matrix(m);
    SparseCol<F> bc;
    for (int r = 0; r < m.rows; ++r)
        if (!f.is_zero(b[r])) bc.emplace_back(r, b[r]);
    bool extended = e.add_col(bc);
    SolveOutcome<F> out;
    if (!extended) {
        const auto kers = e.kernel_basis();
        // the kernel vector produced by the b column is the last one
        const Vec<F>& k = kers.back();
        auto c = k[m.cols];
        if (f.is_zero(c)) throw StructuralError("solver internal: zero b-coefficient");
        auto scale = f.neg(f.inv(c));
        Vec<F> x(m.cols);
        for (int j = 0; j < m.cols; ++j) x[j] = f.mul(scale, k[j]);
        out.x = std::move(x);
        return out;
    }
    // Infeasible: find a left kernel vector of m not orthogonal to b.
    auto mt = mat_transpose(f, m);
    auto ki = kernel_image(f, mt, label + " (transpose)");
    for (const auto& y : ki.kernel) {
        if (!f.is_zero(dot(f, y, b))) {
            out.infeasibility_witness = y;
            return out;
        }
    }
    throw StructuralError("solver internal: no witness despite infeasibility");
}

// ------------------------------------------------------------- subquotient

template <class F>
struct SubquotientBasis {
    int ambient_dim = 0;
    std::vector<Vec<F>> cycle_basis;
    std::vector<Vec<F>> boundary_basis;
    std::vector<Vec<F>> representatives;
    int dim() const { return static_cast<int>(representatives.size()); }
};

// Gauss-Jordan canonicalization: returns an equivalent spanning set in
// reduced column echelon form (unit pivots, pivot rows cleared elsewhere),
// sorted by pivot row.  Deterministic regardless of input order.
template <class F>
std::vector<Vec<F>> rref_canonicalize(const F& f, std::vector<Vec<F>> vecs) {
    std::vector<Vec<F>> basis;
    std::vector<int> pivots;
    for (auto& v : vecs) {
        // reduce against existing
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto c = v[pivots[i]];
            if (f.is_zero(c)) continue;
            for (std::size_t r = 0; r < v.size(); ++r)
                v[r] = f.sub(v[r], f.mul(c, basis[i][r]));
        }
        int lead = -1;
        for (std::size_t r = 0; r < v.size(); ++r)
            if (!f.is_zero(v[r])) { lead = static_cast<int>(r); break; }
        if (lead < 0) continue;
        auto inv = f.inv(v[lead]);
        for (auto& e : v) e = f.mul(e, inv);
        // clear this pivot from the others
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto c = basis[i][lead];
            if (f.is_zero(c)) continue;
            for (std::size_t r = 0; r < v.size(); ++r)
                basis[i][r] = f.sub(basis[i][r], f.mul(c, v[r]));
        }
        basis.push_back(std::move(v));
        pivots.push_back(lead);
    }
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
    std::vector<Vec<F>> out;
    for (auto i : order) out.push_back(std::move(basis[i]));
    return out;
}

template <class F>
SparseCol<F> to_sparse_col(const F& f, const Vec<F>& v) {
    SparseCol<F> c;
    for (std::size_t r = 0; r < v.size(); ++r)
        if (!f.is_zero(v[r])) c.emplace_back(static_cast<int>(r), v[r]);
    return c;
}

// Subquotient span(Z)/span(B) from explicit spanning vectors.  Verifies that
// B lies inside span(Z); representatives are cycles extending the boundary
// echelon, canonicalized, so the output is deterministic in the input spans.
template <class F>
SubquotientBasis<F> subquotient_spans(const F& f, int ambient_dim,
                                      const std::vector<Vec<F>>& zspan,
                                      const std::vector<Vec<F>>& bspan,
                                      const std::string& label = "subquotient") {
    for (const auto& v : zspan)
        if (static_cast<int>(v.size()) != ambient_dim)
            throw StructuralError("subquotient spans: cycle vector size mismatch at " + label);
    for (const auto& v : bspan)
        if (static_cast<int>(v.size()) != ambient_dim)
            throw StructuralError("subquotient spans: boundary vector size mismatch at " + label);
    SubquotientBasis<F> out;
    out.ambient_dim = ambient_dim;
    out.cycle_basis = rref_canonicalize(f, zspan);
    out.boundary_basis = rref_canonicalize(f, bspan);
    Eliminator<F> zel(f, ambient_dim, static_cast<int>(out.cycle_basis.size()), false,
                      label + " (cycle span)");
    for (const auto& z : out.cycle_basis) zel.add_col(to_sparse_col(f, z));
    for (const auto& b : out.boundary_basis)
        if (!zel.in_span(to_sparse_col(f, b)))
            throw StructuralError("boundary span escapes the cycle span at " + label);
    Eliminator<F> span(f, ambient_dim,
                       static_cast<int>(out.boundary_basis.size()) +
                           static_cast<int>(out.cycle_basis.size()),
                       false, label + " (classes)");
    for (const auto& b : out.boundary_basis) span.add_col(to_sparse_col(f, b));
    std::vector<Vec<F>> reps;
    for (const auto& z : out.cycle_basis)
        if (span.add_col(to_sparse_col(f, z))) reps.push_back(z);
    out.representatives = rref_canonicalize(f, std::move(reps));
    return out;
}

// Homology at the middle of  in -> . -> out : checks out.in = 0, returns
// cycles, boundaries, and canonical representatives of cycles mod boundaries.
template <class F>
SubquotientBasis<F> subquotient(const F& f, const SparseMat<F>& boundaries_in,
                                const SparseMat<F>& boundaries_out,
                                const std::string& label = "complex degree") {
    if (boundaries_in.rows != boundaries_out.cols)
        throw StructuralError("subquotient: ambient dimension mismatch at " + label);
    if (!mat_is_zero(mat_mul(f, boundaries_out, boundaries_in)))
        throw StructuralError("not a complex at " + label + ": d.d != 0");
    SubquotientBasis<F> out;
    out.ambient_dim = boundaries_in.rows;
    auto ki_out = kernel_image(f, boundaries_out, label + " (outgoing)");
    out.cycle_basis = std::move(ki_out.kernel);
    Eliminator<F> bnd(f, out.ambient_dim, boundaries_in.cols, false, label + " (boundaries)");
    std::vector<Vec<F>> bbasis;
    for (const auto& c : boundaries_in.col)
        if (bnd.add_col(c)) {
            Vec<F> v(out.ambient_dim, f.zero());
            for (const auto& [r, val] : c) v[r] = val;
            bbasis.push_back(std::move(v));
        }
    out.boundary_basis = rref_canonicalize(f, std::move(bbasis));
    // representatives: cycles that extend the boundary echelon, canonicalized
    Eliminator<F> span(f, out.ambient_dim, boundaries_in.cols + out.ambient_dim, false,
                       label + " (classes)");
    for (const auto& b : out.boundary_basis) span.add_col(to_sparse_col(f, b));
    std::vector<Vec<F>> reps;
    for (const auto& z : out.cycle_basis)
        if (span.add_col(to_sparse_col(f, z))) reps.push_back(z);
    out.representatives = rref_canonicalize(f, std::move(reps));
    return out;
}

} // namespace hhsmash
