#pragma once

#include "bnchain/bn_core.hpp"
#include "bnchain/certify.hpp"
#include "bnchain/construct.hpp"
#include "bnchain/errors.hpp"
#include "bnchain/io.hpp"
#include "bnchain/render.hpp"
#include "bnchain/series.hpp"
#include "bnchain/tableau.hpp"
