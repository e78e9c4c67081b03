#pragma once

#include <string>
#include <vector>

#include "optproj/approximator.hpp"
#include "optproj/direction_set.hpp"
#include "optproj/energy.hpp"

namespace optproj {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// Direction-set files: JSON with schema_version 1 and fields
// {schema_version, p, n, kind, scale, directions}.  Serialized doubles use
// the shortest round-trip decimal form, so save/load is bit-identical.
std::string direction_set_to_json(const DirectionSet& ds);
void save_direction_set(const std::string& path, const DirectionSet& ds);
DirectionSet load_direction_set(const std::string& path);

// Sample files: CSV, one observation per row, optional non-numeric header
// row.  Parse failures report 1-based line numbers.
Sample load_sample(const std::string& path);
void save_sample(const std::string& path, const Sample& s);

// MSE experiment rows as CSV with a fixed header.
std::string mse_csv(const std::vector<MSEReport>& rows);
void write_mse_csv(const std::string& path, const std::vector<MSEReport>& rows);

}  // namespace optproj
