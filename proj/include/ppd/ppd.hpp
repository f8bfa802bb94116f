#pragma once

#include <ppd/binary_expansion.hpp>
#include <ppd/error.hpp>
#include <ppd/forbidden.hpp>
#include <ppd/genbench.hpp>
#include <ppd/matrix.hpp>
#include <ppd/obstruction.hpp>
#include <ppd/oracle.hpp>
#include <ppd/phylo_tree.hpp>
#include <ppd/pig.hpp>
#include <ppd/report_json.hpp>
#include <ppd/tree_builder.hpp>
#include <ppd/two_sat.hpp>
