"""
Serializers for scenario documents and reports
"""
from rest_framework import serializers

from config.exceptions import InputError
from paperlib.scenarios import HANDLERS, SCENARIO_IDS, build_scenario


class ParamField(serializers.Field):
    """An integer, a list of integers or "a..b"; range checks happen in parse_params"""

    def to_internal_value(self, data):
        if isinstance(data, (int, str, list)) and not isinstance(data, bool):
            return data
        raise serializers.ValidationError("expected an integer, a list or a range 'a..b'")

    def to_representation(self, value):
        return value


class CheckSerializer(serializers.Serializer):
    """Serializer for one named check"""
    name = serializers.CharField()
    op = serializers.ChoiceField(choices=sorted(HANDLERS))
    args = serializers.DictField(default=dict)
    expect = serializers.JSONField(required=False, allow_null=True, default=None)
    anchor = serializers.CharField(required=False, allow_blank=True, default='')


class ScenarioDocumentSerializer(serializers.Serializer):
    """Serializer for scenario documents: {id, params, checks}"""
    id = serializers.ChoiceField(choices=SCENARIO_IDS)
    params = serializers.DictField(child=ParamField(), default=dict)
    checks = CheckSerializer(many=True, required=False, default=list)

    def validate(self, data):
        try:
            data['scenario'] = build_scenario(data['id'], data['params'], data['checks'])
        except InputError as e:
            raise serializers.ValidationError(str(e))
        return data

    def create(self, validated_data):
        return validated_data['scenario']


class CheckResultSerializer(serializers.Serializer):
    """Serializer for one check of a report"""
    name = serializers.CharField()
    op = serializers.CharField()
    args = serializers.DictField()
    anchor = serializers.CharField(allow_blank=True)
    expected = serializers.JSONField(allow_null=True)
    computed = serializers.JSONField(allow_null=True)
    passed = serializers.BooleanField()
    error = serializers.CharField(allow_blank=True)
    error_family = serializers.CharField(allow_blank=True)


class AxiomSerializer(serializers.Serializer):
    """Serializer for an axiom record"""
    id = serializers.CharField()
    justification = serializers.CharField()
    payload = serializers.DictField(child=serializers.CharField(), default=dict)


class ReportSerializer(serializers.Serializer):
    """Serializer for saved reports, used when re-rendering them"""
    schema_version = serializers.CharField()
    scenario = serializers.CharField()
    params = serializers.DictField(child=serializers.ListField(child=serializers.IntegerField()))
    passed = serializers.BooleanField()
    checks = CheckResultSerializer(many=True)
    axioms = AxiomSerializer(many=True, default=list)
