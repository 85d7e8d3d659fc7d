#include "crucial/golden.hpp"

namespace crucial::golden {

namespace {

// Exact counts are integers, lower bounds ">=N", unknown cells "?" or absent.
// A row or cell "source" overrides the table-level one.
constexpr std::string_view fixture_text = R"json(
{
  "tables": [
    {
      "name": "square-free",
      "classes": [
        "square-free"
      ],
      "note": "totals: OEIS A221989",
      "source": "published square-free table",
      "rows": [
        {"n": 1, "total": 1, "source": "published square-free sequence, n=1..18"},
        {"n": 2, "total": 2, "source": "published square-free sequence, n=1..18"},
        {"n": 3, "total": 6, "sym": 2, "rc": 1},
        {"n": 4, "total": 12, "sym": 3, "rc": 0},
        {"n": 5, "total": 34, "sym": 10, "rc": 3},
        {"n": 6, "total": 104, "sym": 26, "rc": 0},
        {"n": 7, "total": 406, "sym": 105, "rc": 7},
        {"n": 8, "total": 1112, "sym": 278, "rc": 0},
        {"n": 9, "total": 3980, "sym": 1011, "rc": 32},
        {"n": 10, "total": 15216, "sym": 3804, "rc": 0},
        {"n": 11, "total": 68034, "sym": 17065, "rc": 113},
        {"n": 12, "total": 312048, "sym": 78012, "rc": 0},
        {"n": 13, "total": 1625968, "sym": 406795, "rc": 606},
        {"n": 14, "total": 8771376, "sym": 2192844, "rc": 0},
        {"n": 15, "total": 53270068, "sym": 13318687, "rc": 2340},
        {"n": 16, "total": 319218912, "sym": 79804728, "rc": 0},
        {
          "n": 17,
          "total": {
            "value": 2135312542,
            "source": "published square-free table, total derived there as 4*sym - 2*rc"
          },
          "sym": 533838106,
          "rc": 19941
        },
        {"n": 18, "total": 14420106264, "source": "published square-free sequence, n=1..18"}
      ]
    },
    {
      "name": "right-crucial",
      "classes": [
        "{n}",
        "{0}"
      ],
      "note": "totals: OEIS A221990; rc column counts reverse-complement fixed members up to complement",
      "source": "published right-crucial table",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 60, "sym": 30, "rc": 0},
        {"n": 8, "total": 140, "sym": 70, "rc": 0},
        {"n": 9, "total": 518, "sym": 259, "rc": 5},
        {"n": 10, "total": 1444, "sym": 722, "rc": 0},
        {"n": 11, "total": 8556, "sym": 4278, "rc": 0},
        {"n": 12, "total": 31992, "sym": 15996, "rc": 0},
        {"n": 13, "total": 220456, "sym": 110228, "rc": 168},
        {"n": 14, "total": 984208, "sym": 492104, "rc": 0},
        {"n": 15, "total": 7453080, "sym": 3726540, "rc": 0},
        {"n": 16, "total": 39692800, "sym": 19846400, "rc": 0},
        {"n": 17, "total": 289981136, "sym": 144990568, "rc": 3522}
      ]
    },
    {
      "name": "bicrucial",
      "classes": [
        "{0,n}"
      ],
      "note": "the published table caption also cites A221990",
      "source": "published bicrucial table",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 0, "sym": 0, "rc": 0},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 54, "sym": 16, "rc": 5},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 69856, "sym": 17548, "rc": 168},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 2930016, "sym": 732504, "rc": 0},
        {"n": 16, "total": 0, "sym": 0, "rc": 0},
        {"n": 17, "total": 40654860, "sym": 10165476, "rc": 3522},
        {"n": 18, "total": 0, "sym": 0, "rc": 0},
        {
          "n": 19,
          "total": {
            "value": 162190472,
            "source": "published bicrucial table, total derived there as 4*sym - 2*rc"
          },
          "sym": 40547618,
          "rc": 0
        },
        {"n": 20, "total": 0, "sym": 0, "rc": 0},
        {"n": 21, "total": ">=1156065982", "sym": ">=578032991", "rc": 287834},
        {"n": 22, "total": 0, "sym": 0, "rc": 0},
        {"n": 23, "total": ">=1250325828", "sym": ">=625162914", "rc": 0},
        {"n": 24, "total": "?", "sym": ">=0", "rc": 0},
        {"n": 25, "total": ">=28100262", "sym": ">=0", "rc": 14050131},
        {"n": 26, "total": 0, "sym": 0, "rc": 0}
      ]
    },
    {
      "name": "{1}",
      "classes": [
        "{1}",
        "{n-1}"
      ],
      "source": "published table for {1} and {n-1}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 82, "sym": 41, "rc": 3},
        {"n": 8, "total": 272, "sym": 136, "rc": 0},
        {"n": 9, "total": 766, "sym": 383, "rc": 0},
        {"n": 10, "total": 3788, "sym": 1894, "rc": 0},
        {"n": 11, "total": 14096, "sym": 7048, "rc": 58},
        {"n": 12, "total": 74568, "sym": 37284, "rc": 0},
        {"n": 13, "total": 281232, "sym": 140616, "rc": 0},
        {"n": 14, "total": 2026184, "sym": 1013092, "rc": 0},
        {"n": 15, "total": 9430962, "sym": 4715481, "rc": 961},
        {"n": 16, "total": 79497550, "sym": 39748775, "rc": 0},
        {"n": 17, "total": 422657308, "sym": 211328654, "rc": 28}
      ]
    },
    {
      "name": "{0,1}",
      "classes": [
        "{0,1}",
        "{n-1,n}"
      ],
      "source": "published table for {0,1} and {n-1,n}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 0, "sym": 0, "rc": 0},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 0, "sym": 0, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 54854, "sym": 27427, "rc": 0},
        {"n": 16, "total": 722114, "sym": 361057, "rc": 0},
        {"n": 17, "total": 5144632, "sym": 2572316, "rc": 28}
      ]
    },
    {
      "name": "{0,n-1}",
      "classes": [
        "{0,n-1}",
        "{1,n}"
      ],
      "source": "published table for {0,n-1} and {1,n}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 20, "sym": 10, "rc": 0},
        {"n": 8, "total": 96, "sym": 48, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 1444, "sym": 722, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 10080, "sym": 5040, "rc": 0},
        {"n": 13, "total": 0, "sym": 0, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 2988, "sym": 1494, "rc": 0},
        {"n": 16, "total": 25781024, "sym": 12890512, "rc": 0},
        {"n": 17, "total": 2138998, "sym": 1069499, "rc": 28}
      ]
    },
    {
      "name": "{1,n-1}",
      "classes": [
        "{1,n-1}"
      ],
      "source": "published table for {1,n-1}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 18, "sym": 6, "rc": 3},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 8972, "sym": 2272, "rc": 58},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 281232, "sym": 70308, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 3094458, "sym": 774095, "rc": 961},
        {"n": 16, "total": 1194800, "sym": 298700, "rc": 0},
        {"n": 17, "total": 6056996, "sym": 1514263, "rc": 28}
      ]
    },
    {
      "name": "{0,1,n-1}",
      "classes": [
        "{0,1,n-1}",
        "{1,n-1,n}"
      ],
      "source": "published table for {0,1,n-1} and {1,n-1,n}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 0, "sym": 0, "rc": 0},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 0, "sym": 0, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 0, "sym": 0, "rc": 0},
        {"n": 16, "total": 553428, "sym": 276714, "rc": 0},
        {"n": 17, "total": 5424, "sym": 2712, "rc": 28}
      ]
    },
    {
      "name": "{0,1,n}",
      "classes": [
        "{0,1,n}",
        "{0,n-1,n}"
      ],
      "source": "published table for {0,1,n} and {0,n-1,n}",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 0, "sym": 0, "rc": 0},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 0, "sym": 0, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 0, "sym": 0, "rc": 0},
        {"n": 16, "total": 0, "sym": 0, "rc": 0},
        {"n": 17, "total": 550976, "sym": 275488, "rc": 28}
      ]
    },
    {
      "name": "s-crucial",
      "classes": [
        "{0,1,n-1,n}"
      ],
      "note": "n=23..26: searches for total and sym timed out",
      "source": "published S-crucial table",
      "rows": [
        {"n": 3, "total": 0, "sym": 0, "rc": 0},
        {"n": 4, "total": 0, "sym": 0, "rc": 0},
        {"n": 5, "total": 0, "sym": 0, "rc": 0},
        {"n": 6, "total": 0, "sym": 0, "rc": 0},
        {"n": 7, "total": 0, "sym": 0, "rc": 0},
        {"n": 8, "total": 0, "sym": 0, "rc": 0},
        {"n": 9, "total": 0, "sym": 0, "rc": 0},
        {"n": 10, "total": 0, "sym": 0, "rc": 0},
        {"n": 11, "total": 0, "sym": 0, "rc": 0},
        {"n": 12, "total": 0, "sym": 0, "rc": 0},
        {"n": 13, "total": 0, "sym": 0, "rc": 0},
        {"n": 14, "total": 0, "sym": 0, "rc": 0},
        {"n": 15, "total": 0, "sym": 0, "rc": 0},
        {"n": 16, "total": 0, "sym": 0, "rc": 0},
        {"n": 17, "total": 1568, "sym": 406, "rc": 28},
        {"n": 18, "total": 0, "sym": 0, "rc": 0},
        {"n": 19, "total": 0, "sym": 0, "rc": 0},
        {"n": 20, "total": 0, "sym": 0, "rc": 0},
        {"n": 21, "total": ">=289172", "sym": ">=144586"},
        {"n": 22, "total": 0, "sym": 0, "rc": 0},
        {"n": 23, "rc": 0},
        {"n": 24, "rc": 0},
        {"n": 26, "rc": 0}
      ]
    }
  ],
  "minimum_lengths": [
    {
      "classes": [
        "{0}",
        "{n}"
      ],
      "length": 7,
      "count": 60,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{1}",
        "{n-1}"
      ],
      "length": 7,
      "count": 82,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,1}",
        "{n-1,n}"
      ],
      "length": 15,
      "count": 54854,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,n-1}",
        "{1,n}"
      ],
      "length": 7,
      "count": 20,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,n}"
      ],
      "length": 9,
      "count": 54,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{1,n-1}"
      ],
      "length": 7,
      "count": 18,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,1,n-1}",
        "{1,n-1,n}"
      ],
      "length": 16,
      "count": 553428,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,1,n}",
        "{0,n-1,n}"
      ],
      "length": 17,
      "count": 550976,
      "source": "published minimum-length summary"
    },
    {
      "classes": [
        "{0,1,n-1,n}"
      ],
      "length": 17,
      "count": 1568,
      "source": "published minimum-length summary"
    }
  ]
})json";

} // namespace

std::string_view builtin_fixture_text() {
    return fixture_text;
}

} // namespace crucial::golden
