#pragma once

// Everything except the CLI front end.
#include "profinite/alphabet.hpp"
#include "profinite/bigint.hpp"
#include "profinite/cayley.hpp"
#include "profinite/error.hpp"
#include "profinite/example1.hpp"
#include "profinite/example2.hpp"
#include "profinite/permutation.hpp"
#include "profinite/quotients.hpp"
#include "profinite/report.hpp"
#include "profinite/separation.hpp"
#include "profinite/serialization.hpp"
#include "profinite/stallings.hpp"
#include "profinite/words.hpp"
