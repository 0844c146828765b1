"""Lloyd-Max centroids of N(0,1), 2**B levels for B in 1..8.

Generated by gaussian_lloyd_max (movement tolerance 1e-10); kept as
constants so every install quantizes bit-identically. A regeneration
test guards against drift between this table and the optimizer.
"""

CENTROIDS = {
    1: (
        -0.79788456080286541,
        0.79788456080286541,
    ),
    2: (
        -1.5104176084005285,
        -0.45278003458875249,
        0.45278003458875249,
        1.5104176084005285,
    ),
    3: (
        -2.1519457038895862,
        -1.3439092778491428,
        -0.75600528072516615,
        -0.24509417876818326,
        0.24509417876818326,
        0.75600528072516615,
        1.3439092778491428,
        2.1519457038895862,
    ),
    4: (
        -2.732589568634773,
        -2.069017223864746,
        -1.6180463833011824,
        -1.2562311947832359,
        -0.94234045426877444,
        -0.6567591168215805,
        -0.38804829841119359,
        -0.12839502948247999,
        0.12839502948247999,
        0.38804829841119359,
        0.6567591168215805,
        0.94234045426877444,
        1.2562311947832359,
        1.6180463833011824,
        2.069017223864746,
        2.732589568634773,
    ),
    5: (
        -3.2607324849821011,
        -2.6911195678291278,
        -2.3177393939575728,
        -2.0287283887562735,
        -1.7872332069052068,
        -1.5762280678795246,
        -1.3863403291319578,
        -1.2118043706348762,
        -1.0487833106198927,
        -0.89456510893321273,
        -0.74713569624147835,
        -0.60493361771344434,
        -0.46669951795082815,
        -0.3313783021001282,
        -0.19805182744511843,
        -0.065889659024635144,
        0.065889659024635144,
        0.19805182744511843,
        0.3313783021001282,
        0.46669951795082815,
        0.60493361771344434,
        0.74713569624147835,
        0.89456510893321273,
        1.0487833106198927,
        1.2118043706348762,
        1.3863403291319578,
        1.5762280678795246,
        1.7872332069052068,
        2.0287283887562735,
        2.3177393939575728,
        2.6911195678291278,
        3.2607324849821011,
    ),
    6: (
        -3.7441012407356458,
        -3.2404370213479066,
        -2.9174067546395079,
        -2.6722737973145101,
        -2.4713047582126997,
        -2.2989811692065185,
        -2.1468101756308,
        -2.0096110005516215,
        -1.8839771981034081,
        -1.7675418404256527,
        -1.6585888579351638,
        -1.5558311825109992,
        -1.4582763330107102,
        -1.3651409788376796,
        -1.2757944463779989,
        -1.189720102918536,
        -1.1064882018988276,
        -1.0257363129262669,
        -0.9471549102557727,
        -0.87047655388804634,
        -0.79546762517518144,
        -0.72192191204370304,
        -0.64965555481620973,
        -0.57850300667804611,
        -0.50831375958008462,
        -0.43894965296761723,
        -0.3702826292860929,
        -0.30219283319508816,
        -0.2345669750200681,
        -0.16729689596418928,
        -0.10027828484645307,
        -0.033409504881860536,
        0.033409504881860536,
        0.10027828484645307,
        0.16729689596418928,
        0.2345669750200681,
        0.30219283319508816,
        0.3702826292860929,
        0.43894965296761723,
        0.50831375958008462,
        0.57850300667804611,
        0.64965555481620973,
        0.72192191204370304,
        0.79546762517518144,
        0.87047655388804634,
        0.9471549102557727,
        1.0257363129262669,
        1.1064882018988276,
        1.189720102918536,
        1.2757944463779989,
        1.3651409788376796,
        1.4582763330107102,
        1.5558311825109992,
        1.6585888579351638,
        1.7675418404256527,
        1.8839771981034081,
        2.0096110005516215,
        2.1468101756308,
        2.2989811692065185,
        2.4713047582126997,
        2.6722737973145101,
        2.9174067546395079,
        3.2404370213479066,
        3.7441012407356458,
    ),
    7: (
        -4.189694047067098,
        -3.7349365239296191,
        -3.4474301431646497,
        -3.2319330703457432,
        -3.0572460116497284,
        -2.9090469302879907,
        -2.7795141108226753,
        -2.6638863880724406,
        -2.5590403679389748,
        -2.4628112768631616,
        -2.3736341111973203,
        -2.2903390012919278,
        -2.212027354981184,
        -2.1379932139457014,
        -2.0676713102116802,
        -2.0006016052822453,
        -1.9364043914405422,
        -1.8747623806321863,
        -1.8154075452787386,
        -1.7581112693980874,
        -1.7026768552035345,
        -1.6489337376413942,
        -1.5967329583787291,
        -1.5459435827038579,
        -1.4964498320997768,
        -1.4481487668237025,
        -1.4009483960094733,
        -1.354766123566606,
        -1.3095274603694365,
        -1.2651649494932682,
        -1.2216172632990685,
        -1.1788284401922269,
        -1.1367472357082966,
        -1.0953265677954498,
        -1.0545230401867203,
        -1.0142965308798781,
        -0.97460983519476896,
        -0.93542835481034814,
        -0.89671982572080311,
        -0.85845407928041439,
        -0.82060283149513547,
        -0.78313949652134163,
        -0.74603902098325003,
        -0.70927773625491741,
        -0.67283322629061104,
        -0.63668420895050992,
        -0.60081042906842552,
        -0.5651925617589435,
        -0.52981212467055139,
        -0.49465139806666086,
        -0.45969335176413217,
        -0.424921578083368,
        -0.3903202300695468,
        -0.3558739643335832,
        -0.32156788793722335,
        -0.2873875088108967,
        -0.25331868924751344,
        -0.21934760206146287,
        -0.18546068904154409,
        -0.15164462135875267,
        -0.11788626161807919,
        -0.084172627265451494,
        -0.05049085507986998,
        -0.016828166494904359,
        0.016828166494904359,
        0.05049085507986998,
        0.084172627265451494,
        0.11788626161807919,
        0.15164462135875267,
        0.18546068904154409,
        0.21934760206146287,
        0.25331868924751344,
        0.2873875088108967,
        0.32156788793722335,
        0.3558739643335832,
        0.3903202300695468,
        0.424921578083368,
        0.45969335176413217,
        0.49465139806666086,
        0.52981212467055139,
        0.5651925617589435,
        0.60081042906842552,
        0.63668420895050992,
        0.67283322629061104,
        0.70927773625491741,
        0.74603902098325003,
        0.78313949652134163,
        0.82060283149513547,
        0.85845407928041439,
        0.89671982572080311,
        0.93542835481034814,
        0.97460983519476896,
        1.0142965308798781,
        1.0545230401867203,
        1.0953265677954498,
        1.1367472357082966,
        1.1788284401922269,
        1.2216172632990685,
        1.2651649494932682,
        1.3095274603694365,
        1.354766123566606,
        1.4009483960094733,
        1.4481487668237025,
        1.4964498320997768,
        1.5459435827038579,
        1.5967329583787291,
        1.6489337376413942,
        1.7026768552035345,
        1.7581112693980874,
        1.8154075452787386,
        1.8747623806321863,
        1.9364043914405422,
        2.0006016052822453,
        2.0676713102116802,
        2.1379932139457014,
        2.212027354981184,
        2.2903390012919278,
        2.3736341111973203,
        2.4628112768631616,
        2.5590403679389748,
        2.6638863880724406,
        2.7795141108226753,
        2.9090469302879907,
        3.0572460116497284,
        3.2319330703457432,
        3.4474301431646497,
        3.7349365239296191,
        4.189694047067098,
    ),
    8: (
        -4.603535207691448,
        -4.186595004211723,
        -3.9256373220148864,
        -3.7316657817815253,
        -3.5755874762743947,
        -3.4440711683499901,
        -3.3298479478100464,
        -3.2284996771725893,
        -3.1371319879821682,
        -3.0537414628939681,
        -2.9768815715243782,
        -2.9054723331604713,
        -2.8386852084400944,
        -2.775870067036033,
        -2.7165069859960722,
        -2.6601733665925007,
        -2.6065208612091104,
        -2.5552587863337877,
        -2.5061419439050017,
        -2.4589615119310242,
        -2.413538117918018,
        -2.3697164942329572,
        -2.3273612994360997,
        -2.2863538121286711,
        -2.2465892867557056,
        -2.2079748179136107,
        -2.1704275997680087,
        -2.1338734956956698,
        -2.0982458538536917,
        -2.0634845194442386,
        -2.0295350055974577,
        -1.9963477931459428,
        -1.9638777358830657,
        -1.9320835527229301,
        -1.9009273919006406,
        -1.8703744552399104,
        -1.8403926727807789,
        -1.810952419848709,
        -1.7820262700618121,
        -1.7535887789137234,
        -1.7256162934801611,
        -1.6980867845382011,
        -1.6709796979909315,
        -1.6442758229807333,
        -1.6179571744819077,
        -1.5920068884968175,
        -1.5664091282590951,
        -1.5411490000785848,
        -1.5162124776564827,
        -1.4915863338632884,
        -1.4672580791082654,
        -1.4432159055478313,
        -1.4194486364762837,
        -1.3959456803296231,
        -1.3726969888035494,
        -1.3496930186485225,
        -1.3269246967599484,
        -1.3043833882244495,
        -1.2820608670260203,
        -1.2599492891477269,
        -1.2380411678363683,
        -1.216329350823026,
        -1.1948069993145276,
        -1.1734675685922822,
        -1.1523047900713164,
        -1.1313126546881533,
        -1.1104853974998248,
        -1.0898174833884209,
        -1.0693035937754902,
        -1.0489386142616632,
        -1.0287176231127375,
        -1.0086358805234494,
        -0.98868881859515612,
        -0.96887203197005123,
        -0.94918126907005385,
        -0.9296124238926996,
        -0.91016152832134189,
        -0.89082474491012142,
        -0.87159836010790093,
        -0.85247877788848192,
        -0.83346251375718028,
        -0.81454618910614363,
        -0.79572652589338189,
        -0.77700034162243359,
        -0.75836454460147729,
        -0.73981612946183151,
        -0.72135217291893849,
        -0.70296982975785061,
        -0.68466632902919167,
        -0.66643897044049849,
        -0.64828512093025559,
        -0.63020221141262489,
        -0.61218773368112422,
        -0.59423923746145935,
        -0.57635432760315597,
        -0.55853066140161711,
        -0.54076594604169625,
        -0.52305793615524565,
        -0.50540443148525371,
        -0.487803274649865,
        -0.47025234899976132,
        -0.45274957656295012,
        -0.43529291607161291,
        -0.41788036106547333,
        -0.40050993806685098,
        -0.38317970482300578,
        -0.36588774861103923,
        -0.34863218460153278,
        -0.33141115427684398,
        -0.31422282390059209,
        -0.29706538303472008,
        -0.27993704310081086,
        -0.26283603598265259,
        -0.24576061266699789,
        -0.22870904191962357,
        -0.21167960899412455,
        -0.19467061437065369,
        -0.17768037252229557,
        -0.16070721070650087,
        -0.14374946777941894,
        -0.12680549303081884,
        -0.10987364503747102,
        -0.092952290532735404,
        -0.076039803290668131,
        -0.059134563022175686,
        -0.042234954281687123,
        -0.025339365382127891,
        -0.0084461873163965036,
        0.0084461873163965036,
        0.025339365382127891,
        0.042234954281687123,
        0.059134563022175686,
        0.076039803290668131,
        0.092952290532735404,
        0.10987364503747102,
        0.12680549303081884,
        0.14374946777941894,
        0.16070721070650087,
        0.17768037252229557,
        0.19467061437065369,
        0.21167960899412455,
        0.22870904191962357,
        0.24576061266699789,
        0.26283603598265259,
        0.27993704310081086,
        0.29706538303472008,
        0.31422282390059209,
        0.33141115427684398,
        0.34863218460153278,
        0.36588774861103923,
        0.38317970482300578,
        0.40050993806685098,
        0.41788036106547333,
        0.43529291607161291,
        0.45274957656295012,
        0.47025234899976132,
        0.487803274649865,
        0.50540443148525371,
        0.52305793615524565,
        0.54076594604169625,
        0.55853066140161711,
        0.57635432760315597,
        0.59423923746145935,
        0.61218773368112422,
        0.63020221141262489,
        0.64828512093025559,
        0.66643897044049849,
        0.68466632902919167,
        0.70296982975785061,
        0.72135217291893849,
        0.73981612946183151,
        0.75836454460147729,
        0.77700034162243359,
        0.79572652589338189,
        0.81454618910614363,
        0.83346251375718028,
        0.85247877788848192,
        0.87159836010790093,
        0.89082474491012142,
        0.91016152832134189,
        0.9296124238926996,
        0.94918126907005385,
        0.96887203197005123,
        0.98868881859515612,
        1.0086358805234494,
        1.0287176231127375,
        1.0489386142616632,
        1.0693035937754902,
        1.0898174833884209,
        1.1104853974998248,
        1.1313126546881533,
        1.1523047900713164,
        1.1734675685922822,
        1.1948069993145276,
        1.216329350823026,
        1.2380411678363683,
        1.2599492891477269,
        1.2820608670260203,
        1.3043833882244495,
        1.3269246967599484,
        1.3496930186485225,
        1.3726969888035494,
        1.3959456803296231,
        1.4194486364762837,
        1.4432159055478313,
        1.4672580791082654,
        1.4915863338632884,
        1.5162124776564827,
        1.5411490000785848,
        1.5664091282590951,
        1.5920068884968175,
        1.6179571744819077,
        1.6442758229807333,
        1.6709796979909315,
        1.6980867845382011,
        1.7256162934801611,
        1.7535887789137234,
        1.7820262700618121,
        1.810952419848709,
        1.8403926727807789,
        1.8703744552399104,
        1.9009273919006406,
        1.9320835527229301,
        1.9638777358830657,
        1.9963477931459428,
        2.0295350055974577,
        2.0634845194442386,
        2.0982458538536917,
        2.1338734956956698,
        2.1704275997680087,
        2.2079748179136107,
        2.2465892867557056,
        2.2863538121286711,
        2.3273612994360997,
        2.3697164942329572,
        2.413538117918018,
        2.4589615119310242,
        2.5061419439050017,
        2.5552587863337877,
        2.6065208612091104,
        2.6601733665925007,
        2.7165069859960722,
        2.775870067036033,
        2.8386852084400944,
        2.9054723331604713,
        2.9768815715243782,
        3.0537414628939681,
        3.1371319879821682,
        3.2284996771725893,
        3.3298479478100464,
        3.4440711683499901,
        3.5755874762743947,
        3.7316657817815253,
        3.9256373220148864,
        4.186595004211723,
        4.603535207691448,
    ),
}
