#ifndef DECON2D_CSV_HPP
#define DECON2D_CSV_HPP

#include <string>
#include <vector>

#include "decon2d/datagen.hpp"
#include "decon2d/estimators.hpp"
#include "decon2d/types.hpp"

namespace decon2d {

//! Shortest decimal string that round-trips the double exactly;
//! locale-independent ('.' decimal point always).
std::string format_double(double v);

//! Exact inverse of format_double; throws on malformed input.
double parse_double(const std::string& s);

//! Observed sample, columns x1,x2 (plus y1,y2 when with_truth).
void write_sample_csv(const std::string& path, const PairedSample& sample,
                      bool with_truth);

//! Points with header x1,x2.
void write_points_csv(const std::string& path, const Sample2D& points);

//! Reads the x1 and x2 columns (located by header name; extra columns
//! are ignored).  Errors carry the file name and 1-based line number;
//! a file without data rows raises "no data".
Sample2D read_points_csv(const std::string& path);

//! Censored records, columns t1,t2,delta.
void write_censored_csv(const std::string& path,
                        const std::vector<CensoredRow>& rows);

//! Reads t1,t2,delta; validates delta in 1..4 per row.
std::vector<CensoredRow> read_censored_csv(const std::string& path);

//! Long-format surface: one row x1,x2,value per grid node, axis-1 major.
void write_grid_csv(const std::string& path, const GridResult& grid);

}  // namespace decon2d

#endif
