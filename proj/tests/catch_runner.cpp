// Single translation unit for the Catch2 amalgamated implementation; every
// unit suite links against this to keep rebuilds cheap.

#include <catch2/catch_amalgamated.cpp>
