#pragma once

#include "maternpar/locations.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace maternpar {

/// All tables open with a schema-version comment line:
/// `# maternpar-csv v1 <schema>` followed by the column header. Readers skip
/// `#` lines.
void write_csv(std::ostream& os, const std::string& schema,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_csv_file(const std::string& path, const std::string& schema,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

std::string fmt(double v);

struct XyzData {
  LocationSet locs;
  Eigen::VectorXd z;
};

/// Data CSV with header `x,y,z`; malformed numeric fields raise
/// std::invalid_argument naming the offending row. `rescale` maps both
/// coordinates affinely onto [0,1]^2.
XyzData read_xyz(const std::string& path, bool rescale = false);

void write_xyz(const std::string& path, const LocationSet& locs,
               const Eigen::VectorXd& z);

} // namespace maternpar
