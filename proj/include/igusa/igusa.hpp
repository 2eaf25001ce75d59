#pragma once

#include "igusa/errors.hpp"
#include "igusa/hensel.hpp"
#include "igusa/io.hpp"
#include "igusa/newton.hpp"
#include "igusa/nondegen.hpp"
#include "igusa/numeric.hpp"
#include "igusa/onevar.hpp"
#include "igusa/oracle.hpp"
#include "igusa/padic.hpp"
#include "igusa/prime.hpp"
#include "igusa/qpoly.hpp"
#include "igusa/series.hpp"
#include "igusa/truncation.hpp"
#include "igusa/zeta_engine.hpp"
#include "igusa/zeta_rational.hpp"
