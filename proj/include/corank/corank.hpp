#ifndef CORANK_CORANK_HPP
#define CORANK_CORANK_HPP

#include "corank/common.hpp"
#include "corank/fixpoint.hpp"
#include "corank/game.hpp"
#include "corank/model_io.hpp"
#include "corank/ordinal.hpp"
#include "corank/pts.hpp"
#include "corank/rational.hpp"
#include "corank/report.hpp"
#include "corank/testkit.hpp"
#include "corank/tree.hpp"

#endif
