#include "exekg/schema.hpp"

namespace exekg {

namespace {

// Upper-level data-science schema: the pipeline/task/method/data-entity core,
// the object and datatype properties instance KGs use, and the vocabulary the
// bottom-level schemata are described with.
const char* kDsDocument = R"ttl(@prefix ds: <https://exekg.example/ds#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .

ds:Pipeline a owl:Class .
ds:Task a owl:Class .
ds:Method a owl:Class .
ds:DataEntity a owl:Class .
ds:InputSlot a owl:Class .
ds:ParamSpec a owl:Class .
ds:InputRole a owl:Class .
ds:OutputRole a owl:Class .
ds:DataStructure a owl:Class .

ds:hasStartTask a owl:ObjectProperty .
ds:hasNextTask a owl:ObjectProperty .
ds:hasMethod a owl:ObjectProperty .
ds:hasInput a owl:ObjectProperty .
ds:hasOutput a owl:ObjectProperty .
ds:hasInputSlot a owl:ObjectProperty .
ds:slotContent a owl:ObjectProperty .
ds:implementsTask a owl:ObjectProperty .
ds:hasParam a owl:ObjectProperty .
ds:onProperty a owl:ObjectProperty .
ds:hasInputRole a owl:ObjectProperty .
ds:hasOutputRole a owl:ObjectProperty .

ds:hasInputDataPath a owl:DatatypeProperty .
ds:hasSource a owl:DatatypeProperty .
ds:hasDataStructure a owl:DatatypeProperty .
ds:hasDataSemantics a owl:DatatypeProperty .
ds:slotIndex a owl:DatatypeProperty .
ds:slotRole a owl:DatatypeProperty .
ds:outputRole a owl:DatatypeProperty .
ds:paramDatatype a owl:DatatypeProperty .
ds:required a owl:DatatypeProperty .
ds:defaultValue a owl:DatatypeProperty .
ds:paramIndex a owl:DatatypeProperty .
ds:roleName a owl:DatatypeProperty .
ds:allowsStructure a owl:DatatypeProperty .
ds:producesStructure a owl:DatatypeProperty .
ds:variadic a owl:DatatypeProperty .
ds:roleIndex a owl:DatatypeProperty .

ds:NumericColumn a ds:DataStructure .
ds:CategoricalColumn a ds:DataStructure .
ds:Table a ds:DataStructure .
ds:SplitIndices a ds:DataStructure .
ds:Model a ds:DataStructure .
ds:Metric a ds:DataStructure .
ds:Canvas a ds:DataStructure .
)ttl";

// Visualization schema: canvas methods define plot size and layout, plot
// methods draw line/scatter/bar plots into a canvas slot.
const char* kVisuDocument = R"ttl(@prefix ds: <https://exekg.example/ds#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix visu: <https://exekg.example/visu#> .

visu:CanvasTask a owl:Class ; rdfs:subClassOf ds:Task .
visu:PlotTask a owl:Class ; rdfs:subClassOf ds:Task .

visu:CanvasMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask visu:CanvasTask .
visu:LinePlotMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask visu:PlotTask .
visu:ScatterPlotMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask visu:PlotTask .
visu:BarPlotMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask visu:PlotTask .

visu:hasWidth a owl:DatatypeProperty .
visu:hasHeight a owl:DatatypeProperty .
visu:hasGridRows a owl:DatatypeProperty .
visu:hasGridCols a owl:DatatypeProperty .
visu:hasSlot a owl:DatatypeProperty .

visu:CanvasMethod ds:hasParam visu:WidthParam, visu:HeightParam, visu:GridRowsParam, visu:GridColsParam .
visu:WidthParam a ds:ParamSpec ; ds:onProperty visu:hasWidth ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 800 ; ds:paramIndex 0 .
visu:HeightParam a ds:ParamSpec ; ds:onProperty visu:hasHeight ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 600 ; ds:paramIndex 1 .
visu:GridRowsParam a ds:ParamSpec ; ds:onProperty visu:hasGridRows ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 1 ; ds:paramIndex 2 .
visu:GridColsParam a ds:ParamSpec ; ds:onProperty visu:hasGridCols ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 1 ; ds:paramIndex 3 .

visu:SlotParam a ds:ParamSpec ; ds:onProperty visu:hasSlot ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 0 ; ds:paramIndex 0 .
visu:LinePlotMethod ds:hasParam visu:SlotParam .
visu:ScatterPlotMethod ds:hasParam visu:SlotParam .
visu:BarPlotMethod ds:hasParam visu:SlotParam .

visu:CanvasTask ds:hasOutputRole visu:CanvasOut .
visu:CanvasOut a ds:OutputRole ; ds:roleName "canvas" ; ds:producesStructure "Canvas" ; ds:roleIndex 0 .

visu:PlotTask ds:hasInputRole visu:PlotCanvasIn, visu:PlotSeriesIn ; ds:hasOutputRole visu:PlotOut .
visu:PlotCanvasIn a ds:InputRole ; ds:roleName "canvas" ; ds:allowsStructure "Canvas" ; ds:variadic false ; ds:roleIndex 0 .
visu:PlotSeriesIn a ds:InputRole ; ds:roleName "series" ; ds:allowsStructure "NumericColumn", "Metric" ; ds:variadic true ; ds:roleIndex 1 .
visu:PlotOut a ds:OutputRole ; ds:roleName "canvas" ; ds:producesStructure "Canvas" ; ds:roleIndex 0 .
)ttl";

// Statistics and feature-engineering schema: mean/std/IQR primitives plus the
// composed normalization and outlier-detection methods.
const char* kStatsDocument = R"ttl(@prefix ds: <https://exekg.example/ds#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix stats: <https://exekg.example/stats#> .

stats:StatisticTask a owl:Class ; rdfs:subClassOf ds:Task .
stats:NormalizationTask a owl:Class ; rdfs:subClassOf ds:Task .
stats:OutlierDetectionTask a owl:Class ; rdfs:subClassOf ds:Task .

stats:MeanMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask stats:StatisticTask .
stats:StdMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask stats:StatisticTask .
stats:IQRMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask stats:StatisticTask .
stats:ZScoreMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask stats:NormalizationTask .
stats:IQRFenceMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask stats:OutlierDetectionTask .

stats:StatisticTask ds:hasInputRole stats:StatisticIn ; ds:hasOutputRole stats:StatisticOut .
stats:StatisticIn a ds:InputRole ; ds:roleName "data" ; ds:allowsStructure "NumericColumn" ; ds:variadic false ; ds:roleIndex 0 .
stats:StatisticOut a ds:OutputRole ; ds:roleName "result" ; ds:producesStructure "Metric" ; ds:roleIndex 0 .

stats:NormalizationTask ds:hasInputRole stats:NormalizationIn ; ds:hasOutputRole stats:NormalizationOut .
stats:NormalizationIn a ds:InputRole ; ds:roleName "data" ; ds:allowsStructure "NumericColumn" ; ds:variadic false ; ds:roleIndex 0 .
stats:NormalizationOut a ds:OutputRole ; ds:roleName "normalized" ; ds:producesStructure "NumericColumn" ; ds:roleIndex 0 .

stats:OutlierDetectionTask ds:hasInputRole stats:OutlierIn ; ds:hasOutputRole stats:OutlierOut .
stats:OutlierIn a ds:InputRole ; ds:roleName "data" ; ds:allowsStructure "NumericColumn" ; ds:variadic false ; ds:roleIndex 0 .
stats:OutlierOut a ds:OutputRole ; ds:roleName "mask" ; ds:producesStructure "NumericColumn" ; ds:roleIndex 0 .
)ttl";

// ML schema: k-NN / linear-regression / MLP training, prediction, data
// splitting and performance calculation.
const char* kMlDocument = R"ttl(@prefix ds: <https://exekg.example/ds#> .
@prefix ml: <https://exekg.example/ml#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

ml:DataSplittingTask a owl:Class ; rdfs:subClassOf ds:Task .
ml:TrainTask a owl:Class ; rdfs:subClassOf ds:Task .
ml:TestTask a owl:Class ; rdfs:subClassOf ds:Task .
ml:PerformanceTask a owl:Class ; rdfs:subClassOf ds:Task .

ml:TrainTestSplitMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:DataSplittingTask .
ml:KNNTrainMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:TrainTask .
ml:LinRegTrainMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:TrainTask .
ml:MLPTrainMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:TrainTask .
ml:PredictMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:TestTask .
ml:AccuracyMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:PerformanceTask .
ml:MAEMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:PerformanceTask .
ml:RMSEMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:PerformanceTask .
ml:PredictionErrorMethod a owl:Class ; rdfs:subClassOf ds:Method ; ds:implementsTask ml:PerformanceTask .

ml:hasK a owl:DatatypeProperty .
ml:hasSplitRatio a owl:DatatypeProperty .
ml:hasSeed a owl:DatatypeProperty .
ml:hasHiddenSize a owl:DatatypeProperty .
ml:hasEpochs a owl:DatatypeProperty .
ml:hasLearningRate a owl:DatatypeProperty .

ml:TrainTestSplitMethod ds:hasParam ml:SplitRatioParam, ml:SplitSeedParam .
ml:SplitRatioParam a ds:ParamSpec ; ds:onProperty ml:hasSplitRatio ; ds:paramDatatype "double" ; ds:required false ; ds:defaultValue 0.8 ; ds:paramIndex 0 .
ml:SplitSeedParam a ds:ParamSpec ; ds:onProperty ml:hasSeed ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 42 ; ds:paramIndex 1 .

ml:KNNTrainMethod ds:hasParam ml:KParam .
ml:KParam a ds:ParamSpec ; ds:onProperty ml:hasK ; ds:paramDatatype "integer" ; ds:required true ; ds:paramIndex 0 .

ml:MLPTrainMethod ds:hasParam ml:HiddenSizeParam, ml:EpochsParam, ml:LearningRateParam, ml:MlpSeedParam .
ml:HiddenSizeParam a ds:ParamSpec ; ds:onProperty ml:hasHiddenSize ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 8 ; ds:paramIndex 0 .
ml:EpochsParam a ds:ParamSpec ; ds:onProperty ml:hasEpochs ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 200 ; ds:paramIndex 1 .
ml:LearningRateParam a ds:ParamSpec ; ds:onProperty ml:hasLearningRate ; ds:paramDatatype "double" ; ds:required false ; ds:defaultValue 0.01 ; ds:paramIndex 2 .
ml:MlpSeedParam a ds:ParamSpec ; ds:onProperty ml:hasSeed ; ds:paramDatatype "integer" ; ds:required false ; ds:defaultValue 42 ; ds:paramIndex 3 .

ml:DataSplittingTask ds:hasInputRole ml:SplitDataIn ; ds:hasOutputRole ml:SplitOut .
ml:SplitDataIn a ds:InputRole ; ds:roleName "data" ; ds:allowsStructure "NumericColumn", "CategoricalColumn" ; ds:variadic true ; ds:roleIndex 0 .
ml:SplitOut a ds:OutputRole ; ds:roleName "split" ; ds:producesStructure "SplitIndices" ; ds:roleIndex 0 .

ml:TrainTask ds:hasInputRole ml:TrainFeaturesIn, ml:TrainLabelsIn, ml:TrainSplitIn ; ds:hasOutputRole ml:TrainOut .
ml:TrainFeaturesIn a ds:InputRole ; ds:roleName "features" ; ds:allowsStructure "NumericColumn" ; ds:variadic true ; ds:roleIndex 0 .
ml:TrainLabelsIn a ds:InputRole ; ds:roleName "labels" ; ds:allowsStructure "NumericColumn", "CategoricalColumn" ; ds:variadic false ; ds:roleIndex 1 .
ml:TrainSplitIn a ds:InputRole ; ds:roleName "split" ; ds:allowsStructure "SplitIndices" ; ds:variadic false ; ds:roleIndex 2 .
ml:TrainOut a ds:OutputRole ; ds:roleName "model" ; ds:producesStructure "Model" ; ds:roleIndex 0 .

ml:TestTask ds:hasInputRole ml:TestModelIn, ml:TestFeaturesIn, ml:TestSplitIn ; ds:hasOutputRole ml:TestOut .
ml:TestModelIn a ds:InputRole ; ds:roleName "model" ; ds:allowsStructure "Model" ; ds:variadic false ; ds:roleIndex 0 .
ml:TestFeaturesIn a ds:InputRole ; ds:roleName "features" ; ds:allowsStructure "NumericColumn" ; ds:variadic true ; ds:roleIndex 1 .
ml:TestSplitIn a ds:InputRole ; ds:roleName "split" ; ds:allowsStructure "SplitIndices" ; ds:variadic false ; ds:roleIndex 2 .
ml:TestOut a ds:OutputRole ; ds:roleName "predictions" ; ds:producesStructure "NumericColumn" ; ds:roleIndex 0 .

ml:PerformanceTask ds:hasInputRole ml:PerfPredictionsIn, ml:PerfTruthIn, ml:PerfSplitIn ; ds:hasOutputRole ml:PerfOut .
ml:PerfPredictionsIn a ds:InputRole ; ds:roleName "predictions" ; ds:allowsStructure "NumericColumn", "CategoricalColumn" ; ds:variadic false ; ds:roleIndex 0 .
ml:PerfTruthIn a ds:InputRole ; ds:roleName "truth" ; ds:allowsStructure "NumericColumn", "CategoricalColumn" ; ds:variadic false ; ds:roleIndex 1 .
ml:PerfSplitIn a ds:InputRole ; ds:roleName "split" ; ds:allowsStructure "SplitIndices" ; ds:variadic false ; ds:roleIndex 2 .
ml:PerfOut a ds:OutputRole ; ds:roleName "metric" ; ds:producesStructure "Metric" ; ds:roleIndex 0 .
)ttl";

}  // namespace

const std::vector<std::pair<std::string, std::string>>& Schema::builtin_documents() {
  static const std::vector<std::pair<std::string, std::string>> docs = {
      {"ds", kDsDocument},
      {"visu", kVisuDocument},
      {"stats", kStatsDocument},
      {"ml", kMlDocument},
  };
  return docs;
}

}  // namespace exekg
