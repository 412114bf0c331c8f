#include "gel/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gel {

namespace {

std::shared_ptr<const PathTable> make_table(const GraphPtr &g, std::size_t k) {
    return path_table(g, k);
}

// |E^k|, saturating at SIZE_MAX.
std::size_t count_paths(const Graph &g, std::size_t k) {
    std::vector<std::size_t> ending(g.num_vertices(), 1);
    const std::size_t big = static_cast<std::size_t>(-1);
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<std::size_t> next(g.num_vertices(), 0);
        for (const auto &e : g.edges()) {
            std::size_t add = ending[e.source];
            std::size_t &slot = next[e.range];
            slot = (big - slot < add) ? big : slot + add;
        }
        ending = std::move(next);
    }
    std::size_t total = 0;
    for (auto c : ending)
        total = (big - total < c) ? big : total + c;
    return total;
}

void require_budget(const Graph &g, std::size_t level, std::size_t budget) {
    if (count_paths(g, level) > budget)
        throw CapExceeded("level " + std::to_string(level) + " exceeds the path budget of " +
                          std::to_string(budget));
}

} // namespace

BlockPermutation::BlockPermutation(std::shared_ptr<const PathTable> table,
                                   std::vector<std::uint32_t> image)
    : table_(std::move(table)), image_(std::move(image)) {
    if (image_.size() != table_->size())
        throw std::invalid_argument("permutation size does not match E^k");
    std::vector<bool> hit(image_.size(), false);
    for (std::size_t i = 0; i < image_.size(); ++i) {
        std::uint32_t j = image_[i];
        if (j >= image_.size() || hit[j])
            throw std::invalid_argument("not a bijection of E^k");
        hit[j] = true;
        const Path &a = (*table_)[i];
        const Path &b = (*table_)[j];
        if (a.source != b.source || a.range != b.range)
            throw std::invalid_argument("permutation crosses blocks");
    }
}

BlockPermutation BlockPermutation::identity(std::shared_ptr<const PathTable> table) {
    std::vector<std::uint32_t> img(table->size());
    std::iota(img.begin(), img.end(), 0u);
    return BlockPermutation(std::move(table), std::move(img));
}

BlockPermutation BlockPermutation::identity(GraphPtr g, std::size_t k) {
    return identity(make_table(g, k));
}

bool BlockPermutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i)
            return false;
    return true;
}

BlockPermutation BlockPermutation::inverse() const {
    std::vector<std::uint32_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i)
        inv[image_[i]] = static_cast<std::uint32_t>(i);
    return BlockPermutation(table_, std::move(inv));
}

BlockPermutation operator*(const BlockPermutation &a, const BlockPermutation &b) {
    if (a.level() != b.level())
        throw std::invalid_argument("product of permutations at different levels");
    std::vector<std::uint32_t> img(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        img[i] = a.image_[b.image_[i]];
    return BlockPermutation(a.table_, std::move(img));
}

std::string BlockPermutation::cycles() const {
    if (is_identity())
        return "id";
    std::string out;
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (seen[i] || image_[i] == i)
            continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first)
                out += ' ';
            first = false;
            out += format_path(graph(), (*table_)[j]);
            j = image_[j];
        }
        out += ')';
    }
    return out;
}

std::uint64_t BlockPermutation::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(level());
    for (auto v : image_)
        mix(v);
    return h;
}

BlockPermutation parse_cycles(GraphPtr g, std::size_t k, std::string_view text) {
    if (k == 0)
        throw std::invalid_argument("permutations live at level >= 1");
    auto table = make_table(g, k);
    BlockPermutation result = BlockPermutation::identity(table);

    std::string s(text);
    auto trimmed = s;
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), ::isspace), trimmed.end());
    if (trimmed.empty() || trimmed == "id")
        return result;

    std::vector<std::vector<std::string>> cyc;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(')
            throw std::invalid_argument("expected '(' in cycle notation at offset " +
                                        std::to_string(i));
        auto close = s.find(')', i);
        if (close == std::string::npos)
            throw std::invalid_argument("unterminated cycle");
        std::string body = s.substr(i + 1, close - i - 1);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream in(body);
        std::vector<std::string> items;
        for (std::string t; in >> t;)
            items.push_back(t);
        cyc.push_back(std::move(items));
        i = close + 1;
    }

    // right-to-left: the rightmost cycle acts first
    for (auto it = cyc.rbegin(); it != cyc.rend(); ++it) {
        std::vector<std::uint32_t> idx;
        for (const auto &lit : *it) {
            Path p = parse_path(*g, lit);
            if (p.length() != k)
                throw std::invalid_argument("path " + lit + " is not in E^" + std::to_string(k));
            std::uint32_t j = static_cast<std::uint32_t>(table->index(p));
            if (std::find(idx.begin(), idx.end(), j) != idx.end())
                throw std::invalid_argument("path " + lit + " repeated in a cycle");
            if (!idx.empty()) {
                const Path &first = (*table)[idx.front()];
                if (first.source != p.source || first.range != p.range)
                    throw std::invalid_argument("cycle crosses blocks at " + lit);
            }
            idx.push_back(j);
        }
        std::vector<std::uint32_t> img(table->size());
        std::iota(img.begin(), img.end(), 0u);
        for (std::size_t t = 0; t < idx.size(); ++t)
            img[idx[t]] = idx[(t + 1) % idx.size()];
        result = BlockPermutation(table, std::move(img)) * result;
    }
    return result;
}

Element to_unitary(const StarAlgebra &alg, const BlockPermutation &p) {
    Element u(p.level(), p.level());
    for (std::size_t i = 0; i < p.size(); ++i)
        u.add(p.table()[p[i]], p.table()[i], 1);
    (void)alg;
    return u;
}

BlockPermutation act_at(const BlockPermutation &p, std::size_t level, std::size_t offset) {
    const std::size_t k = p.level();
    if (offset + k > level)
        throw std::invalid_argument("window does not fit inside the level");
    const Graph &g = p.graph();
    auto table = make_table(p.graph_ptr(), level);
    std::vector<std::uint32_t> img(table->size());
    for (std::size_t i = 0; i < table->size(); ++i) {
        const Path &gamma = (*table)[i];
        Path window;
        window.source = offset == 0 ? gamma.source : g.range(gamma.edges[offset - 1]);
        window.range = g.range(gamma.edges[offset + k - 1]);
        window.edges.assign(gamma.edges.begin() + offset, gamma.edges.begin() + offset + k);
        const Path &moved = p.apply(window);
        Path out = gamma;
        std::copy(moved.edges.begin(), moved.edges.end(), out.edges.begin() + offset);
        img[i] = static_cast<std::uint32_t>(table->index(out));
    }
    return BlockPermutation(table, std::move(img));
}

BlockPermutation embed(const BlockPermutation &p, std::size_t level) {
    if (level < p.level())
        throw std::invalid_argument("cannot embed to a lower level");
    if (level == p.level())
        return p;
    return act_at(p, level, 0);
}

BlockPermutation reduce_level(const BlockPermutation &p) {
    BlockPermutation cur = p;
    const Graph &g = p.graph();
    while (cur.level() > 1) {
        const std::size_t k = cur.level();
        auto lower = make_table(cur.graph_ptr(), k - 1);
        std::vector<std::int64_t> img(lower->size(), -1);
        bool ok = true;
        for (std::size_t i = 0; i < cur.size() && ok; ++i) {
            const Path &a = cur.table()[i];
            const Path &b = cur.table()[cur[i]];
            if (a.edges.back() != b.edges.back()) {
                ok = false;
                break;
            }
            auto ia = lower->index(prefix(g, a, k - 1));
            auto ib = static_cast<std::int64_t>(lower->index(prefix(g, b, k - 1)));
            if (img[ia] < 0)
                img[ia] = ib;
            else if (img[ia] != ib)
                ok = false;
        }
        if (!ok)
            break;
        std::vector<std::uint32_t> out(img.begin(), img.end());
        cur = BlockPermutation(lower, std::move(out));
    }
    return cur;
}

bool same_endomorphism(const BlockPermutation &a, const BlockPermutation &b) {
    std::size_t level = std::max(a.level(), b.level());
    return embed(a, level) == embed(b, level);
}

BlockPermutation cocycle(const BlockPermutation &p, std::size_t r) {
    if (r == 0)
        throw std::invalid_argument("cocycle index starts at 1");
    const std::size_t level = p.level() + r - 1;
    BlockPermutation acc = act_at(p, level, 0);
    for (std::size_t j = 1; j < r; ++j)
        acc = acc * act_at(p, level, j);
    return acc;
}

BlockPermutation star_compose(const BlockPermutation &u, const BlockPermutation &w) {
    if (u.graph_ptr() != w.graph_ptr() && &u.graph() != &w.graph())
        throw std::invalid_argument("permutations on different graphs");
    const std::size_t level = u.level() + w.level() - 1;
    BlockPermutation pi = cocycle(u, w.level());
    BlockPermutation out = pi * embed(w, level) * pi.inverse() * embed(u, level);
    return out;
}

std::size_t balanced_dimension(const Graph &g, std::size_t level) {
    std::vector<std::size_t> per_range(g.num_vertices(), 0);
    for (const auto &p : paths(g, level))
        ++per_range[p.range];
    std::size_t d = 0;
    for (auto c : per_range)
        d += c * c;
    return d;
}

InverseSearch try_invert(const BlockPermutation &p, std::optional<std::size_t> cap) {
    InverseSearch res;
    res.cap = cap.value_or(balanced_dimension(p.graph(), p.level() - 1) + 2);
    const BlockPermutation back = p.inverse();
    std::optional<BlockPermutation> prev;
    BlockPermutation um = p;
    for (std::size_t m = 1; m <= res.cap; ++m) {
        res.iterations = m;
        const std::size_t level = p.level() + m - 1;
        require_budget(p.graph(), level, kDefaultPathBudget);
        if (m > 1)
            um = embed(um, level) * act_at(p, level, m - 1);
        BlockPermutation wm = um.inverse() * embed(back, level) * um;
        if (prev && same_endomorphism(*prev, wm)) {
            BlockPermutation cand = reduce_level(wm);
            bool right = reduce_level(star_compose(p, cand)).is_identity();
            bool left = reduce_level(star_compose(cand, p)).is_identity();
            if (right && left) {
                res.inverse = cand;
                return res;
            }
        }
        prev = std::move(wm);
    }
    return res;
}

BlockPermutation invert(const BlockPermutation &p) {
    auto res = try_invert(p);
    if (!res.inverse)
        throw CapExceeded("no stable inverse within " + std::to_string(res.cap) +
                          " iterations; the endomorphism is not invertible");
    return *res.inverse;
}

OrderResult order_up_to(const BlockPermutation &p, std::size_t cap, std::size_t path_budget) {
    if (cap == 0)
        throw std::invalid_argument("order cap must be positive");
    OrderResult res;
    res.cap = cap;
    if (!try_invert(p).inverse) {
        res.invertible = false;
        res.note = "not invertible, so no power is the identity";
        return res;
    }
    BlockPermutation base = reduce_level(p);
    BlockPermutation cur = base;
    for (std::size_t n = 1; n <= cap; ++n) {
        if (cur.is_identity() && cur.level() == 1) {
            res.order = n;
            return res;
        }
        if (n == cap)
            break;
        require_budget(p.graph(), base.level() + cur.level() - 1, path_budget);
        cur = reduce_level(star_compose(base, cur));
    }
    res.note = "order > " + std::to_string(cap);
    return res;
}

Enumeration::Enumeration(GraphPtr g, std::size_t k) : table_(make_table(g, k)) {
    if (k == 0)
        throw std::invalid_argument("permutations live at level >= 1");
    const Graph &gr = table_->graph();
    mpz_class total = 1;
    for (std::size_t v = 0; v < gr.num_vertices(); ++v)
        for (std::size_t w = 0; w < gr.num_vertices(); ++w) {
            std::vector<std::uint32_t> b;
            for (std::size_t i = 0; i < table_->size(); ++i) {
                const Path &p = (*table_)[i];
                if (p.range == static_cast<VertexId>(v) && p.source == static_cast<VertexId>(w))
                    b.push_back(static_cast<std::uint32_t>(i));
            }
            if (b.empty())
                continue;
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), b.size());
            total *= f;
            radix_.push_back(f.fits_ulong_p() ? f.get_ui() : 0);
            blocks_.push_back(std::move(b));
        }
    count_str_ = total.get_str();
    if (total.fits_ulong_p() && sizeof(unsigned long) >= 8)
        count_ = total.get_ui();
}

void Enumeration::require_within(std::uint64_t cap) const {
    if (!count_ || *count_ > cap)
        throw CapExceeded(count_str_ + " permutations at level " + std::to_string(level()) +
                          " exceed the enumeration cap of " + std::to_string(cap));
}

BlockPermutation Enumeration::nth(std::uint64_t i) const {
    if (!count_ || i >= *count_)
        throw std::out_of_range("enumeration index out of range");
    std::vector<std::uint32_t> img(table_->size());
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t b = blocks_.size(); b-- > 0;) {
        const auto &blk = blocks_[b];
        std::uint64_t digit = i % radix_[b];
        i /= radix_[b];
        // lexicographic unranking via the factorial number system
        std::vector<std::uint32_t> pool = blk;
        const std::size_t n = blk.size();
        std::vector<std::uint64_t> fact(n + 1, 1);
        for (std::size_t t = 1; t <= n; ++t)
            fact[t] = fact[t - 1] * t;
        for (std::size_t pos = 0; pos < n; ++pos) {
            std::uint64_t f = fact[n - 1 - pos];
            std::size_t pick = static_cast<std::size_t>(digit / f);
            digit %= f;
            img[blk[pos]] = pool[pick];
            pool.erase(pool.begin() + static_cast<long>(pick));
        }
    }
    return BlockPermutation(table_, std::move(img));
}

void Enumeration::for_each(const std::function<void(std::uint64_t, const BlockPermutation &)> &f,
                           std::uint64_t cap) const {
    require_within(cap);
    for (std::uint64_t i = 0; i < *count_; ++i)
        f(i, nth(i));
}

std::vector<BlockPermutation> Enumeration::all(std::uint64_t cap) const {
    std::vector<BlockPermutation> out;
    for_each([&out](std::uint64_t, const BlockPermutation &p) { out.push_back(p); }, cap);
    return out;
}

} // namespace gel
