from rest_framework import serializers


class CommandConfigSerializer(serializers.Serializer):
    """
    Validates the flags of a management command before anything is built.
    `orientable` is resolved from the mutually exclusive --orientable and
    --nonorientable flags.
    """
    COMMANDS = ("build", "verify", "genus", "enumerate", "formula")
    NEEDS_ORDER = ("build", "enumerate", "formula")
    NEEDS_PATH = ("verify", "genus")

    command = serializers.ChoiceField(choices=COMMANDS)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    multiplicity = serializers.IntegerField(min_value=1, default=1)
    orientable = serializers.BooleanField(default=False)
    nonorientable = serializers.BooleanField(default=False)
    seed = serializers.IntegerField(required=False, allow_null=True)
    count = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    path = serializers.CharField(required=False, allow_null=True)
    out = serializers.CharField(required=False, allow_null=True)
    scheme_out = serializers.CharField(required=False, allow_null=True)
    format = serializers.ChoiceField(choices=("set", "scheme"), default="set")
    strict_strong = serializers.BooleanField(default=False)
    json = serializers.BooleanField(default=False)
    all_embeddings = serializers.BooleanField(default=False)

    def validate(self, attrs):
        command = attrs["command"]
        if attrs.get("orientable") and attrs.get("nonorientable"):
            raise serializers.ValidationError("--orientable and --nonorientable are mutually exclusive.")
        if command in self.NEEDS_ORDER and attrs.get("n") is None:
            raise serializers.ValidationError({"n": f"{command} needs --n."})
        if command in self.NEEDS_PATH and not attrs.get("path"):
            raise serializers.ValidationError({"path": f"{command} needs an input file."})
        if command == "enumerate":
            if attrs.get("count") is None:
                raise serializers.ValidationError({"count": "enumerate needs --count."})
            if attrs["multiplicity"] != 1:
                raise serializers.ValidationError({"multiplicity": "enumerate runs on K_n^3 only."})
        if attrs.get("scheme_out") and command != "build":
            raise serializers.ValidationError({"scheme_out": "--scheme-out belongs to build."})

        attrs["orientable"] = not attrs.pop("nonorientable")
        return attrs


def first_error(errors):
    """Flattens serializer errors into one line for the command line."""
    if isinstance(errors, dict):
        for field, value in errors.items():
            message = first_error(value)
            return message if field == "non_field_errors" else f"{field}: {message}"
    if isinstance(errors, list) and errors:
        return first_error(errors[0])
    return str(errors)


class FaceReportSerializer(serializers.Serializer):
    face_count = serializers.IntegerField()
    face_lengths = serializers.ListField(child=serializers.IntegerField())
    histogram = serializers.SerializerMethodField()
    euler_genus = serializers.IntegerField()
    orientable = serializers.BooleanField()
    genus = serializers.IntegerField()

    def get_histogram(self, obj):
        return {str(length): count for length, count in obj.histogram.items()}


class BuildReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    m = serializers.IntegerField()
    orientable = serializers.BooleanField()
    faces = FaceReportSerializer()
    out = serializers.CharField(allow_null=True)
    scheme_out = serializers.CharField(allow_null=True)


class VerifyReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    m = serializers.IntegerField()
    eulerian = serializers.BooleanField()
    compatible = serializers.BooleanField()
    strong = serializers.BooleanField()
    mixed_pairs = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    quadrilateral = serializers.BooleanField(allow_null=True)
    euler_genus = serializers.IntegerField(allow_null=True)
    euler_genus_lower_bound = serializers.IntegerField()
    genus = serializers.IntegerField(allow_null=True)
    ok = serializers.BooleanField()
    message = serializers.CharField(allow_blank=True)


class FormulaRowSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    m = serializers.IntegerField()
    euler_genus_lower_bound = serializers.IntegerField()
    orientable_genus = serializers.IntegerField(allow_null=True)
    nonorientable_genus = serializers.IntegerField(allow_null=True)
    note = serializers.CharField(allow_blank=True)
    all_embeddings = serializers.CharField(required=False)


class CensusReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    orientable = serializers.BooleanField()
    seed = serializers.IntegerField()
    requested = serializers.IntegerField()
    found = serializers.IntegerField()
    samples = serializers.IntegerField()
    exhausted = serializers.BooleanField()
    count_lower_bound = serializers.CharField()
    count_upper_bound = serializers.CharField()
    digests = serializers.ListField(child=serializers.CharField())
