#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cae::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Runs the `cae` command line; args excludes the program name.
/// Returns 0 on success, 2 on a validation or feasibility failure, 1 on usage or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from CAE_THREADS (default: hardware concurrency).
[[nodiscard]] unsigned thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() workers.
/// The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

[[nodiscard]] std::vector<double> parse_double_list(const std::string& text);
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);
/// "lo:hi:n" or a comma list.
[[nodiscard]] std::vector<double> parse_grid(const std::string& text);
/// One value per line, or "n,value" pairs; a non-numeric first line is a header.
[[nodiscard]] std::vector<double> read_coefficients(const std::string& path);

}  // namespace cae::cli
