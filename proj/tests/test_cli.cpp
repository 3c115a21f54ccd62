#include <catch2/catch_amalgamated.hpp>
#include "ate/combinatorics.hpp"
#include "ate/setexpr.hpp"
