#include "darkbanner/text/lexicon_builtin.hpp"

namespace darkbanner::text {

const char* const kBuiltinLexiconTsv = R"LEX(# darkbanner sentiment lexicon v1
# term<TAB>valence, valence in [-1, 1]; terms are Porter-stemmed at load time.
clear	0.8
clarity	0.7
clean	0.5
easy	0.8
easily	0.8
simple	0.7
simply	0.5
good	0.8
great	0.9
excellent	1.0
best	0.9
better	0.5
straightforward	0.8
transparent	0.8
honest	0.7
obvious	0.6
visible	0.6
prominent	0.5
accessible	0.6
understandable	0.8
understood	0.5
helpful	0.7
convenient	0.6
quick	0.6
quickly	0.6
fast	0.5
direct	0.5
directly	0.5
readable	0.6
legible	0.5
concise	0.6
informative	0.7
detailed	0.5
complete	0.6
thorough	0.6
fair	0.6
balanced	0.6
respectful	0.7
immediate	0.4
immediately	0.4
explicit	0.5
plain	0.4
neat	0.5
tidy	0.5
organized	0.6
logical	0.5
intuitive	0.7
effortless	0.8
smooth	0.5
painless	0.6
friendly	0.6
useful	0.6
precise	0.6
accurate	0.6
nice	0.6
fine	0.4
perfect	0.9
reasonable	0.5
sensible	0.5
consistent	0.5
comprehensive	0.6
descriptive	0.5
structured	0.5
categorized	0.5
labeled	0.4
listed	0.3
succinct	0.5
brief	0.3
compact	0.3
available	0.4
open	0.4
genuine	0.6
trustworthy	0.8
upfront	0.7
forthright	0.6
crisp	0.5
pleasant	0.6
polite	0.5
generous	0.5
responsive	0.5
functional	0.4
works	0.3
working	0.3
intelligible	0.6
approachable	0.5
courteous	0.5
welcome	0.4
satisfying	0.6
effective	0.5
efficient	0.6
confusing	-0.8
confused	-0.7
unclear	-0.8
vague	-0.7
ambiguous	-0.7
hidden	-0.8
hides	-0.7
hard	-0.6
harder	-0.6
difficult	-0.7
complicated	-0.7
complex	-0.5
obscure	-0.7
obscured	-0.7
misleading	-0.9
deceptive	-0.9
deceiving	-0.9
dishonest	-0.9
tricky	-0.7
trick	-0.7
sneaky	-0.8
manipulative	-0.9
manipulated	-0.8
annoying	-0.7
frustrating	-0.8
tedious	-0.6
slow	-0.5
cumbersome	-0.6
awkward	-0.5
convoluted	-0.8
cluttered	-0.6
messy	-0.6
disorganized	-0.6
illegible	-0.7
unreadable	-0.8
tiny	-0.4
buried	-0.7
invisible	-0.7
inaccessible	-0.7
incomplete	-0.5
missing	-0.6
absent	-0.5
poor	-0.7
poorly	-0.7
bad	-0.7
badly	-0.7
terrible	-0.9
awful	-0.9
horrible	-0.9
worst	-1.0
worse	-0.6
wrong	-0.6
broken	-0.7
useless	-0.8
pointless	-0.7
excessive	-0.6
overwhelming	-0.6
verbose	-0.5
lengthy	-0.4
endless	-0.6
repetitive	-0.5
nagging	-0.7
intrusive	-0.7
aggressive	-0.6
forced	-0.7
forcing	-0.7
coercive	-0.8
unfair	-0.7
unbalanced	-0.6
biased	-0.6
inconsistent	-0.6
contradictory	-0.7
cryptic	-0.7
jargon	-0.6
legalese	-0.7
dense	-0.4
impossible	-0.8
painful	-0.7
laborious	-0.6
exhausting	-0.7
troublesome	-0.6
problematic	-0.6
questionable	-0.5
suspicious	-0.6
shady	-0.7
dubious	-0.6
evasive	-0.7
indirect	-0.4
roundabout	-0.5
scattered	-0.5
fragmented	-0.5
partial	-0.4
superficial	-0.5
careless	-0.6
sloppy	-0.6
neglected	-0.5
outdated	-0.4
stale	-0.4
clumsy	-0.5
obstructive	-0.8
blocked	-0.6
blocking	-0.6
trapped	-0.7
stuck	-0.6
maze	-0.7
labyrinth	-0.8
nightmare	-0.9
disaster	-0.9
mess	-0.6
chaos	-0.7
pushy	-0.6
pressure	-0.5
pressured	-0.6
guilt	-0.6
shaming	-0.7
nonsense	-0.7
gibberish	-0.8
unintelligible	-0.8
daunting	-0.6
bloated	-0.5
overloaded	-0.5
crammed	-0.5
squeezed	-0.4
minuscule	-0.5
faint	-0.4
greyed	-0.4
camouflaged	-0.8
disguised	-0.8
)LEX";

}  // namespace darkbanner::text
