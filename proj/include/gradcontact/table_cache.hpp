#pragma once

// Shared kernel-table store for sweeps: an in-memory map keyed by the
// exponent pair and truncation settings, optionally backed by text files.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "gradcontact/kernel.hpp"

namespace gradcontact {

struct TableKey {
    double alpha1;
    double alpha2;
    int N;
    double tail_tol;
    long term_cap;
    double equal_threshold;

    auto tie() const { return std::tie(alpha1, alpha2, N, tail_tol, term_cap, equal_threshold); }
    bool operator<(const TableKey& o) const { return tie() < o.tie(); }

    /// File stem such as `tables_a0.7_a0.35_N16_tol1e-13_cap100000_eq1e-08`.
    std::string stem() const;
};

/// Write tables as a versioned text dump (header line plus row-major data).
void save_tables(const KernelTables<double>& tables, const TableKey& key, const std::filesystem::path& file);

/// Read a dump written by save_tables; nullopt when the header does not match `key`.
std::optional<KernelTables<double>> load_tables(const TableKey& key, const std::filesystem::path& file);

class TableCache {
public:
    explicit TableCache(std::optional<std::filesystem::path> dir = std::nullopt) : dir_(std::move(dir)) {}

    /// Tables for the pair; built at most once per key (thread-safe).
    std::shared_ptr<const KernelTables<double>> get(const ExponentPair<double>& pair, int N,
                                                    const KernelOptions& opt);

    std::size_t builds() const;
    std::size_t disk_hits() const;

private:
    struct Slot {
        std::once_flag once;
        std::shared_ptr<const KernelTables<double>> tables;
        std::exception_ptr error;
    };

    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mutex_;
    std::map<TableKey, std::shared_ptr<Slot>> slots_;
    std::size_t builds_ = 0;
    std::size_t disk_hits_ = 0;
};

}  // namespace gradcontact
