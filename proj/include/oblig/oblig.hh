#pragma once

#include <oblig/classify.hh>
#include <oblig/explicit.hh>
#include <oblig/formula.hh>
#include <oblig/game.hh>
#include <oblig/hoa.hh>
#include <oblig/lambda.hh>
#include <oblig/lasso.hh>
#include <oblig/minimize.hh>
#include <oblig/mtbdd.hh>
#include <oblig/oracle.hh>
#include <oblig/parse.hh>
#include <oblig/patterns.hh>
#include <oblig/translate.hh>
