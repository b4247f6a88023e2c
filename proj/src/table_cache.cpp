#include "gradcontact/table_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gradcontact {

namespace {

constexpr const char* kMagic = "gradcontact-tables";
constexpr int kVersion = 1;

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string header_line(const TableKey& k) {
    std::ostringstream os;
    os << kMagic << " v" << kVersion << " alpha1=" << g12(k.alpha1) << " alpha2=" << g12(k.alpha2) << " N=" << k.N
       << " tail_tol=" << g12(k.tail_tol) << " term_cap=" << k.term_cap << " equal_threshold=" << g12(k.equal_threshold);
    return os.str();
}

template <typename Derived>
void dump(std::ostream& os, const char* name, const Eigen::MatrixBase<Derived>& m) {
    os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}

template <typename Derived>
bool read_block(std::istream& is, const char* name, Eigen::MatrixBase<Derived>& m) {
    std::string tag;
    Eigen::Index r = 0, c = 0;
    if (!(is >> tag >> r >> c) || tag != name || r != m.rows() || c != m.cols()) return false;
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            if (!(is >> m(i, j))) return false;
    return true;
}

}  // namespace

std::string TableKey::stem() const {
    return "tables_a" + g12(alpha1) + "_a" + g12(alpha2) + "_N" + std::to_string(N) + "_tol" + g12(tail_tol) + "_cap" +
           std::to_string(term_cap) + "_eq" + g12(equal_threshold);
}

void save_tables(const KernelTables<double>& t, const TableKey& key, const std::filesystem::path& file) {
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw std::runtime_error("cannot write table cache file " + tmp);
        os.precision(17);
        os << header_line(key) << '\n';
        os << "equal_branch " << t.equal_branch << " max_terms_used " << t.max_terms_used << " max_error_estimate "
           << t.max_error_estimate << '\n';
        dump(os, "H", t.H);
        dump(os, "L", t.L);
        dump(os, "R", t.R);
        dump(os, "betas", t.betas);
        dump(os, "hs", t.hs);
    }
    std::filesystem::rename(tmp, file);
}

std::optional<KernelTables<double>> load_tables(const TableKey& key, const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) return std::nullopt;
    std::string header;
    if (!std::getline(is, header) || header != header_line(key)) return std::nullopt;
    const int N = key.N;
    KernelTables<double> t{ExponentPair<double>(key.alpha1, key.alpha2),
                           N,
                           key.tail_tol,
                           false,
                           Eigen::MatrixXd(N, N),
                           Eigen::MatrixXd(N, N),
                           Eigen::MatrixXd(N, N),
                           Eigen::VectorXd(N),
                           Eigen::VectorXd(N)};
    std::string w1, w2, w3;
    if (!(is >> w1 >> t.equal_branch >> w2 >> t.max_terms_used >> w3 >> t.max_error_estimate)) return std::nullopt;
    if (w1 != "equal_branch" || w2 != "max_terms_used" || w3 != "max_error_estimate") return std::nullopt;
    if (!read_block(is, "H", t.H) || !read_block(is, "L", t.L) || !read_block(is, "R", t.R) ||
        !read_block(is, "betas", t.betas) || !read_block(is, "hs", t.hs))
        return std::nullopt;
    return t;
}

std::shared_ptr<const KernelTables<double>> TableCache::get(const ExponentPair<double>& pair, int N,
                                                            const KernelOptions& opt) {
    const TableKey key{pair.alpha1, pair.alpha2, N, opt.tail_tol, opt.term_cap, opt.equal_threshold};
    std::shared_ptr<Slot> slot;
    {
        std::lock_guard lock(mutex_);
        auto& s = slots_[key];
        if (!s) s = std::make_shared<Slot>();
        slot = s;
    }
    std::call_once(slot->once, [&] {
        try {
            if (dir_) {
                const auto file = *dir_ / (key.stem() + ".txt");
                if (auto loaded = load_tables(key, file)) {
                    slot->tables = std::make_shared<const KernelTables<double>>(std::move(*loaded));
                    std::lock_guard lock(mutex_);
                    ++disk_hits_;
                    return;
                }
            }
            auto built = std::make_shared<const KernelTables<double>>(build_tables(pair, N, opt));
            {
                std::lock_guard lock(mutex_);
                ++builds_;
            }
            if (dir_) {
                std::filesystem::create_directories(*dir_);
                save_tables(*built, key, *dir_ / (key.stem() + ".txt"));
            }
            slot->tables = std::move(built);
        } catch (...) {
            slot->error = std::current_exception();
        }
    });
    if (slot->error) std::rethrow_exception(slot->error);
    return slot->tables;
}

std::size_t TableCache::builds() const {
    std::lock_guard lock(mutex_);
    return builds_;
}

std::size_t TableCache::disk_hits() const {
    std::lock_guard lock(mutex_);
    return disk_hits_;
}

}  // namespace gradcontact
