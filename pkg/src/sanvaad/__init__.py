"""Sign-language gesture classification and translation engine.

Hand-landmark frames in, letter/numeral predictions out, built around a
from-scratch residual MLP over a 141-D two-hand feature vector. Also ships
the text-to-sign planner, the news summary pipeline, and a small streaming
service that exposes all of it.
"""

from .augment import AugmentConfig, batch_generator, expand_dataset, gaussian_noise, landmark_dropout
from .content import (
    Article,
    ContentBundle,
    ContentError,
    ContentRequest,
    CueSheetSynthesizer,
    ExtractiveSummarizer,
    NewsStore,
    SpeechPlan,
    build_bundle,
    build_speech_plan,
    fetch_articles,
    resolve_language,
    summarize,
)
from .evaluate import (
    ClassificationReport,
    ConfusionMatrix,
    confusion_from_indices,
    evaluate,
    report_from_confusion,
    run_ablations,
)
from .landmarks import (
    FEATURE_DIM,
    FINGERTIPS,
    LABELS,
    WRIST,
    DatasetError,
    Hand,
    LabeledSample,
    LandmarkFrame,
    UnmappedLabelError,
    assign_slots,
    class_histogram,
    extract_features,
    extract_features_batch,
    load_dataset,
    load_features,
    normalize_label,
    save_dataset,
    save_features,
)
from .model import (
    NetworkSpec,
    Prediction,
    ResidualMlp,
    ResidualMlpModel,
    TrainConfig,
    init_network,
    predict,
    predict_proba,
    train,
)
from .preprocess import (
    LabelCodec,
    ScalerParams,
    SplitSpec,
    fit_scaler,
    one_hot,
    stratified_split,
    transform,
)
from .quantize import (
    BadMagicError,
    ChecksumError,
    ContainerError,
    UnsupportedVersionError,
    dequantize_tensor,
    load_model,
    quantize_model,
    quantize_tensor,
    save_model,
)
from .signplan import (
    DictionaryError,
    GifItem,
    LetterItem,
    PhraseDictionary,
    SignPlan,
    load_dictionary,
    normalize_text,
    spell_token,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "FEATURE_DIM",
    "FINGERTIPS",
    "LABELS",
    "Article",
    "AugmentConfig",
    "BadMagicError",
    "ChecksumError",
    "ClassificationReport",
    "ConfusionMatrix",
    "ContainerError",
    "ContentBundle",
    "ContentError",
    "ContentRequest",
    "CueSheetSynthesizer",
    "DatasetError",
    "DictionaryError",
    "ExtractiveSummarizer",
    "GifItem",
    "Hand",
    "LabelCodec",
    "LabeledSample",
    "LandmarkFrame",
    "LetterItem",
    "NetworkSpec",
    "NewsStore",
    "PhraseDictionary",
    "Prediction",
    "ResidualMlp",
    "ResidualMlpModel",
    "ScalerParams",
    "SignPlan",
    "SpeechPlan",
    "SplitSpec",
    "TrainConfig",
    "UnmappedLabelError",
    "WRIST",
    "UnsupportedVersionError",
    "assign_slots",
    "batch_generator",
    "build_bundle",
    "build_speech_plan",
    "class_histogram",
    "confusion_from_indices",
    "dequantize_tensor",
    "evaluate",
    "expand_dataset",
    "extract_features",
    "extract_features_batch",
    "fetch_articles",
    "fit_scaler",
    "gaussian_noise",
    "init_network",
    "landmark_dropout",
    "load_dataset",
    "load_dictionary",
    "load_features",
    "load_model",
    "normalize_label",
    "normalize_text",
    "one_hot",
    "predict",
    "predict_proba",
    "quantize_model",
    "quantize_tensor",
    "report_from_confusion",
    "resolve_language",
    "run_ablations",
    "save_dataset",
    "save_features",
    "save_model",
    "spell_token",
    "stratified_split",
    "summarize",
    "train",
    "transform",
    "translate",
]
