#ifndef PEDYN_CSV_HPP
#define PEDYN_CSV_HPP

#include <iosfwd>
#include <string>

#include "pedyn/engine.hpp"

namespace pedyn {

/// Column order of the per-run log. MSE columns are blank except on the
/// iterations where the test-set evaluation ran; the slope columns are
/// blank while their trends are undefined.
inline constexpr const char* kRunCsvHeader =
    "iter,goal_id,cmd_x,cmd_y,exec_x,exec_y,sigma,pe,goal_slope,buf_capacity,"
    "move_amplitude,fwd_mse,inv_mse,mse_slope";

inline constexpr std::size_t kRunCsvColumns = 14;

void write_run_csv(std::ostream& out, const RunLog& log);
void write_run_csv_file(const std::string& path, const RunLog& log);

/// Parses a per-run CSV back into records. Throws std::runtime_error on
/// any schema violation: wrong header, wrong column count, unparseable
/// numbers, or MSE columns that are not blank together.
RunLog read_run_csv(std::istream& in);
RunLog read_run_csv_file(const std::string& path);

} // namespace pedyn

#endif // PEDYN_CSV_HPP
