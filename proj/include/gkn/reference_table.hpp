#pragma once

// Pinned reference values for the Whitehead surgery family: the log-ratio at
// N = 83, 123, 183, 245 for L-framings -5..10, and the Vol + i CS column
// (N = 0 rows) from the SnapPea cusped census.  Rows with f in {0,...,4} or
// f = 2 mod 4 have non-hyperbolic complements or no observed convergence and
// are excluded from tolerance checks.

#include <vector>

#include "gkn/volume.hpp"

namespace gkn {

inline const std::vector<ReferenceEntry>& whitehead_reference_table() {
  static const std::vector<ReferenceEntry> table = {
      // f = -5
      {-5, 83, {3.52627, 3.77047}, true},
      {-5, 123, {3.45119, 3.77611}, true},
      {-5, 183, {3.40037, 3.77866}, true},
      {-5, 245, {3.37410, 3.77958}, true},
      {-5, 0, {3.29690, -1.15407}, true},
      // f = -4
      {-4, 83, {3.40671, -0.97724}, true},
      {-4, 123, {3.33159, -0.97243}, true},
      {-4, 183, {3.28077, -0.97025}, true},
      {-4, 245, {3.25449, -0.96946}, true},
      {-4, 0, {3.17729, -0.96847}, true},
      // f = -3
      {-3, 83, {3.21855, 4.19927}, true},
      {-3, 123, {3.14342, 4.20327}, true},
      {-3, 183, {3.09260, 4.20508}, true},
      {-3, 245, {3.06632, 4.20574}, true},
      {-3, 0, {2.98912, 4.20662}, true},
      // f = -2 (f = 2 mod 4: no convergence observed)
      {-2, 83, {-0.20084, -3.95382}, false},
      {-2, 123, {0.64312, -3.93690}, false},
      {-2, 183, {-1.15661, -3.63002}, false},
      {-2, 245, {0.30569, -3.968664}, false},
      {-2, 0, {2.66674, -0.41123}, false},
      // f = -1
      {-1, 83, {2.25923, 4.93040}, true},
      {-1, 123, {2.18415, 4.93281}, true},
      {-1, 183, {2.13335, 4.93391}, true},
      {-1, 245, {2.10708, 4.93430}, true},
      {-1, 0, {2.02988, 0.0}, true},
      // f = 0..4: non-hyperbolic complements
      {0, 83, {0.30651, -0.00294}, false},
      {0, 123, {0.20601, -0.00133}, false},
      {0, 183, {0.13809, -0.000609}, false},
      {0, 245, {0.10300, -0.00033}, false},
      {1, 83, {0.22776, 3.28809}, false},
      {1, 123, {0.15482, 3.29048}, false},
      {1, 183, {0.10340, 3.28898}, false},
      {1, 245, {0.07714, 3.29014}, false},
      {2, 83, {0.23123, -4.93300}, false},
      {2, 123, {0.15525, -4.93385}, false},
      {2, 183, {0.10398, -4.93430}, false},
      {2, 245, {0.07752, -4.93449}, false},
      {3, 83, {0.35286, -1.37902}, false},
      {3, 123, {0.255233, -1.361564}, false},
      {3, 183, {0.184937, -1.344945}, false},
      {3, 245, {0.00758, 4.62530}, false},
      {4, 83, {-0.06551, -4.58143}, false},
      {4, 123, {-0.09561, -4.64719}, false},
      {4, 183, {0.31686, 4.70468}, false},
      {4, 245, {0.30301, -4.75063}, false},
      // f = 5
      {5, 83, {2.25936, 0.00547}, true},
      {5, 123, {2.18421, 0.00247}, true},
      {5, 183, {2.13337, 0.00111}, true},
      {5, 245, {2.10709, 0.00062}, true},
      {5, 0, {2.02988, 4.93480}, true},
      // f = 6 (f = 2 mod 4)
      {6, 83, {-2.74804, -3.36083}, false},
      {6, 123, {-7.77535, -2.77035}, false},
      {6, 183, {-7.74245, -2.25861}, false},
      {6, 245, {3.02484, 0.87472}, false},
      {6, 0, {2.66674, 4.52357}, false},
      // f = 7
      {7, 83, {3.21829, 0.73646}, true},
      {7, 123, {3.14331, 0.73195}, true},
      {7, 183, {3.09255, 0.72991}, true},
      {7, 245, {3.06629, 0.72917}, true},
      {7, 0, {2.98912, -4.20656}, true},
      // f = 8
      {8, 83, {3.40638, -3.95673}, true},
      {8, 123, {3.33144, -3.96200}, true},
      {8, 183, {3.28071, -3.96439}, true},
      {8, 245, {3.25446, -3.96525}, true},
      {8, 0, {3.17729, -3.96634}, true},
      // f = 9
      {9, 83, {3.52592, 1.16509}, true},
      {9, 123, {3.45103, 1.15904}, true},
      {9, 183, {3.40030, 1.15630}, true},
      {9, 245, {3.37406, 1.15531}, true},
      {9, 0, {3.29690, -3.78074}, true},
      // f = 10 (f = 2 mod 4)
      {10, 83, {2.79822, 2.69441}, false},
      {10, 123, {2.72319, 2.68751}, false},
      {10, 183, {2.67241, 2.68438}, false},
      {10, 245, {2.64615, 2.68325}, false},
      {10, 0, {3.37760, 3.63406}, false},
  };
  return table;
}

}  // namespace gkn
