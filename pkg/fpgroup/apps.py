from django.apps import AppConfig


class FpgroupConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'fpgroup'
