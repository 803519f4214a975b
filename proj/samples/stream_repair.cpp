// Feeds a CSV series from stdin through the streaming cluster cleaner and
// prints each point as soon as it is finalized.
// Usage: stream_repair [s_max] [window] < series.csv

#include <cstdlib>
#include <iostream>

#include "mtcsc/cluster.hpp"
#include "mtcsc/io.hpp"

int main(int argc, char** argv) {
  const double s = argc > 1 ? std::atof(argv[1]) : 1.0;
  const double w = argc > 2 ? std::atof(argv[2]) : 5.0;

  mtcsc::ClusterCleaner cleaner{mtcsc::FixedSpeed(mtcsc::SpeedConstraint(s, w))};
  std::size_t changed = 0;
  auto emit = [&](const std::vector<mtcsc::DataPoint>& points, const auto& originals) {
    for (const auto& p : points) {
      std::cout << mtcsc::io::format_number(p.timestamp);
      for (double v : p.values) std::cout << ',' << mtcsc::io::format_number(v);
      std::cout << '\n';
      changed += originals(p) ? 1 : 0;
    }
  };

  try {
    const mtcsc::TimeSeries input = mtcsc::io::read_series(std::cin);
    std::size_t next = 0;
    auto differs = [&](const mtcsc::DataPoint& p) { return p.values != input[next++].values; };
    std::cout << "timestamp";
    for (std::size_t l = 1; l <= input.dimension(); ++l) std::cout << ",dim_" << l;
    std::cout << '\n';
    for (const auto& p : input) emit(cleaner.push(p), differs);
    emit(cleaner.flush(), differs);
  } catch (const std::exception& e) {
    std::cerr << "stream_repair: " << e.what() << '\n';
    return 2;
  }
  std::cerr << changed << " point(s) repaired\n";
  return 0;
}
